//! JSON problem descriptions: schema types, validation and conversion into
//! core objects. Everything user-facing is validated here before any
//! computation starts, so malformed input never reaches the pipeline.

use std::collections::BTreeMap;

use serde::Deserialize;

use ncayley::{FiniteAbelianGroup, FiniteGroupTable, GroupElement, NCayleySpec, SubgroupEmbedding};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    /// Optional mode tag; must agree with --mode when present.
    pub mode: Option<String>,
    pub group: GroupInput,
    // analyze / oracle-check fields
    pub n: Option<usize>,
    pub connection_sets: Option<BTreeMap<String, Vec<Vec<u64>>>>,
    // import fields
    pub abelian_model: Option<AbelianGroupInput>,
    pub subgroup_injection: Option<Vec<usize>>,
    pub transversal: Option<Vec<usize>>,
    pub connection_set: Option<Vec<usize>>,
    pub options: Option<OptionsInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub invariant_factors: Option<Vec<u64>>,
    pub semidirect: Option<SemidirectInput>,
    pub table: Option<Vec<Vec<usize>>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectInput {
    pub m: u64,
    pub k: u64,
    pub t: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianGroupInput {
    pub invariant_factors: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsInput {
    pub precision_bits: Option<u32>,
    pub max_conductor: Option<u64>,
    pub format: Option<String>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn parse_input(bytes: &[u8]) -> Result<InputFile, CliError> {
    serde_json::from_slice(bytes).map_err(|e| schema(format!("invalid input JSON: {e}")))
}

fn abelian_group(factors: &[u64]) -> Result<FiniteAbelianGroup, CliError> {
    FiniteAbelianGroup::new(factors.to_vec())
        .map_err(|e| schema(format!("invalid abelian group: {e}")))
}

/// Build the spec for analyze / oracle-check modes. Connection-set keys are
/// 1-based "i,j" pairs; absent keys mean empty sets.
pub fn build_spec(input: &InputFile) -> Result<NCayleySpec, CliError> {
    for (field, present) in [
        ("abelian_model", input.abelian_model.is_some()),
        ("subgroup_injection", input.subgroup_injection.is_some()),
        ("transversal", input.transversal.is_some()),
        ("connection_set", input.connection_set.is_some()),
    ] {
        if present {
            return Err(schema(format!(
                "field '{field}' is only valid in import mode"
            )));
        }
    }
    let factors = input
        .group
        .invariant_factors
        .as_ref()
        .ok_or_else(|| schema("analyze input needs group.invariant_factors"))?;
    if input.group.semidirect.is_some() || input.group.table.is_some() {
        return Err(schema(
            "semidirect/table group descriptions are only valid in import mode",
        ));
    }
    let group = abelian_group(factors)?;
    let n = input
        .n
        .ok_or_else(|| schema("analyze input needs the block count n"))?;
    if n < 1 {
        return Err(schema("n must be at least 1"));
    }
    let sets_map = input
        .connection_sets
        .as_ref()
        .ok_or_else(|| schema("analyze input needs connection_sets"))?;

    let mut sets: Vec<Vec<GroupElement>> = vec![Vec::new(); n * n];
    for (key, elements) in sets_map {
        let (i, j) = parse_set_key(key, n)?;
        let mut parsed = Vec::with_capacity(elements.len());
        for residues in elements {
            let e = GroupElement::new(residues.clone());
            group.check_element(&e).map_err(|err| {
                schema(format!("connection set \"{key}\": {err}"))
            })?;
            parsed.push(e);
        }
        sets[(i - 1) * n + (j - 1)] = parsed;
    }
    NCayleySpec::new(group, n, sets).map_err(|e| schema(format!("invalid spec: {e}")))
}

fn parse_set_key(key: &str, n: usize) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != 2 {
        return Err(schema(format!(
            "connection-set key \"{key}\" is not of the form \"i,j\""
        )));
    }
    let i: usize = parts[0]
        .trim()
        .parse()
        .map_err(|_| schema(format!("connection-set key \"{key}\" has a bad row index")))?;
    let j: usize = parts[1]
        .trim()
        .parse()
        .map_err(|_| schema(format!("connection-set key \"{key}\" has a bad column index")))?;
    if i < 1 || i > n || j < 1 || j > n {
        return Err(schema(format!(
            "connection-set key \"{key}\" out of range for n = {n} (keys are 1-based)"
        )));
    }
    Ok((i, j))
}

pub struct ImportProblem {
    pub table: FiniteGroupTable,
    pub embedding: SubgroupEmbedding,
    pub transversal: Vec<usize>,
    pub connection_set: Vec<usize>,
}

/// Assemble an import problem: the big group (semidirect constructor or raw
/// table), the abelian model with its injection, the transversal and the
/// connection set.
pub fn build_import(input: &InputFile) -> Result<ImportProblem, CliError> {
    if input.n.is_some() || input.connection_sets.is_some() {
        return Err(schema(
            "fields 'n'/'connection_sets' are only valid in analyze or oracle-check mode",
        ));
    }
    let table = match (&input.group.semidirect, &input.group.table) {
        (Some(sd), None) => FiniteGroupTable::semidirect_product(sd.m, sd.k, sd.t)
            .map_err(|e| CliError::Precondition(e.to_string()))?,
        (None, Some(rows)) => {
            FiniteGroupTable::from_table(rows.clone(), input.group.labels.clone())
                .map_err(|e| CliError::Precondition(e.to_string()))?
        }
        _ => {
            return Err(schema(
                "import input needs exactly one of group.semidirect or group.table",
            ))
        }
    };
    if input.group.invariant_factors.is_some() {
        return Err(schema(
            "group.invariant_factors is not valid in import mode; use abelian_model",
        ));
    }
    let model_input = input
        .abelian_model
        .as_ref()
        .ok_or_else(|| schema("import input needs abelian_model.invariant_factors"))?;
    let model = abelian_group(&model_input.invariant_factors)?;
    let injection = input
        .subgroup_injection
        .clone()
        .ok_or_else(|| schema("import input needs subgroup_injection"))?;
    let transversal = input
        .transversal
        .clone()
        .ok_or_else(|| schema("import input needs transversal"))?;
    let connection_set = input
        .connection_set
        .clone()
        .ok_or_else(|| schema("import input needs connection_set"))?;
    for (name, list) in [("transversal", &transversal), ("connection_set", &connection_set)] {
        if let Some(&bad) = list.iter().find(|&&x| x >= table.order()) {
            return Err(schema(format!(
                "{name} entry {bad} out of range for group order {}",
                table.order()
            )));
        }
    }
    let embedding = SubgroupEmbedding::new(model, injection, &table)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    Ok(ImportProblem {
        table,
        embedding,
        transversal,
        connection_set,
    })
}
