//! Deterministic report assembly and rendering. The JSON form is
//! byte-identical across runs for identical inputs and options; the text
//! form follows the pipeline order: structure matrix, minor sums,
//! stabilizer, orbits, bounds, certified degree.

use std::collections::BTreeMap;

use serde::Serialize;

use ncayley::spectra::CertificationMethod;
use ncayley::{Analysis, CyclotomicNumber, NCayleySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Analyze,
    Import,
    OracleCheck,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Analyze => "analyze",
            Mode::Import => "import",
            Mode::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
pub struct EchoedOptions {
    pub precision_bits: u32,
    pub max_conductor: u64,
    pub format: Format,
    pub emit_intermediates: bool,
}

/// The spec in the same JSON shape `--mode analyze` accepts.
#[derive(Serialize)]
pub struct SpecJson {
    pub group: GroupJson,
    pub n: usize,
    pub connection_sets: BTreeMap<String, Vec<Vec<u64>>>,
}

#[derive(Serialize)]
pub struct GroupJson {
    pub invariant_factors: Vec<u64>,
}

pub fn spec_to_json(spec: &NCayleySpec) -> SpecJson {
    let mut connection_sets = BTreeMap::new();
    for i in 0..spec.n() {
        for j in 0..spec.n() {
            let set: Vec<Vec<u64>> = spec
                .connection_set(i, j)
                .iter()
                .map(|e| e.residues().to_vec())
                .collect();
            if !set.is_empty() {
                connection_sets.insert(format!("{},{}", i + 1, j + 1), set);
            }
        }
    }
    SpecJson {
        group: GroupJson {
            invariant_factors: spec.group().invariant_factors().to_vec(),
        },
        n: spec.n(),
        connection_sets,
    }
}

#[derive(Serialize)]
pub struct ReportBody {
    pub integral: bool,
    pub lower_bound: u128,
    pub upper_bound: u128,
    pub certified_degree: Option<u128>,
    pub certification_method: CertificationMethod,
    pub splitting_field_note: String,
    pub reconstruction_conductor: Option<u64>,
    pub stabilizer: Vec<u64>,
    pub orbits: Vec<Vec<Vec<u64>>>,
    pub orbit_representatives: Vec<Vec<u64>>,
    pub fixed_field_degree: u64,
}

#[derive(Serialize)]
pub struct Intermediates {
    /// Row-major supports of the structure matrix entries.
    pub delta: Vec<Vec<Vec<Vec<u64>>>>,
    /// beta_0 .. beta_n as (element residues, rational value) pairs.
    pub betas: Vec<Vec<(Vec<u64>, String)>>,
    /// Monic per-representative polynomials, lowest degree first.
    pub representative_char_polys: Vec<Vec<CyclotomicNumber>>,
    pub full_char_poly: String,
    pub integer_roots: Vec<String>,
    pub residual_poly: String,
}

#[derive(Serialize)]
pub struct OracleCheckBody {
    pub consistent: bool,
    pub full_char_poly: String,
    pub direct_char_poly: String,
}

#[derive(Serialize)]
pub struct Output {
    pub input_hash: String,
    pub mode: Mode,
    pub options: EchoedOptions,
    pub group: GroupJson,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transversal_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_spec: Option<SpecJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<OracleCheckBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intermediates: Option<Intermediates>,
}

pub fn report_body(analysis: &Analysis) -> ReportBody {
    let r = &analysis.report;
    ReportBody {
        integral: r.integral,
        lower_bound: r.lower_bound,
        upper_bound: r.upper_bound,
        certified_degree: r.certified_degree,
        certification_method: r.certification_method,
        splitting_field_note: r.splitting_field_note.clone(),
        reconstruction_conductor: r.reconstruction_conductor,
        stabilizer: analysis.stabilizer.members(),
        orbits: analysis
            .orbits
            .orbits()
            .iter()
            .map(|o| o.iter().map(|e| e.residues().to_vec()).collect())
            .collect(),
        orbit_representatives: analysis
            .orbits
            .representatives()
            .iter()
            .map(|e| e.residues().to_vec())
            .collect(),
        fixed_field_degree: analysis.fixed_field.degree(),
    }
}

pub fn intermediates(analysis: &Analysis) -> Intermediates {
    let n = analysis.spec.n();
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(
                analysis
                    .delta
                    .at(i, j)
                    .support()
                    .iter()
                    .map(|e| e.residues().to_vec())
                    .collect(),
            );
        }
        delta.push(row);
    }
    let betas = analysis
        .betas
        .iter()
        .map(|b| {
            b.support()
                .iter()
                .map(|e| (e.residues().to_vec(), b.value_at(e).to_string()))
                .collect()
        })
        .collect();
    Intermediates {
        delta,
        betas,
        representative_char_polys: analysis
            .representative_polys
            .iter()
            .map(|p| p.coeffs().to_vec())
            .collect(),
        full_char_poly: analysis.full_poly.to_string(),
        integer_roots: analysis
            .integrality
            .integer_roots
            .iter()
            .map(|r| r.to_string())
            .collect(),
        residual_poly: analysis.integrality.residual.to_string(),
    }
}

pub fn render(output: &Output, format: Format, analysis: Option<&Analysis>) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(output).expect("report serialization cannot fail")
        }
        Format::Text => render_text(output, analysis),
    }
}

fn render_text(output: &Output, analysis: Option<&Analysis>) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("input:  {}", output.input_hash));
    push(&mut out, format!("mode:   {}", output.mode.as_str()));
    let factors = output
        .group
        .invariant_factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join(" x ");
    push(&mut out, format!("group:  {factors}, n = {}", output.n));
    push(
        &mut out,
        format!(
            "opts:   precision {} bits, max conductor {}",
            output.options.precision_bits, output.options.max_conductor
        ),
    );

    if let Some(v) = output.transversal_verified {
        push(&mut out, format!("transversal verified: {v}"));
    }
    if let Some(spec) = &output.reduced_spec {
        push(&mut out, String::new());
        push(&mut out, "reduced spec (reusable as analyze input):".into());
        push(
            &mut out,
            serde_json::to_string(spec).expect("spec serialization cannot fail"),
        );
    }

    if let Some(a) = analysis {
        push(&mut out, String::new());
        push(&mut out, "Delta =".into());
        let n = a.spec.n();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| a.delta.at(i, j).to_string()).collect();
            push(&mut out, format!("  [ {} ]", row.join("   ")));
        }
        push(&mut out, String::new());
        for (k, beta) in a.betas.iter().enumerate().skip(1) {
            push(&mut out, format!("beta_{k} = {beta}"));
        }
        push(&mut out, String::new());
        let members = a
            .stabilizer
            .members()
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        push(&mut out, format!("H = {{{members}}}"));
        let orbit_strs: Vec<String> = a
            .orbits
            .orbits()
            .iter()
            .map(|o| {
                let inner = o
                    .iter()
                    .map(|e| {
                        if e.residues().len() == 1 {
                            e.residues()[0].to_string()
                        } else {
                            format!(
                                "({})",
                                e.residues()
                                    .iter()
                                    .map(|r| r.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",");
                format!("{{{inner}}}")
            })
            .collect();
        push(&mut out, format!("orbits: {}", orbit_strs.join(" ")));
    }

    if let Some(r) = &output.report {
        push(&mut out, format!("K0 degree: {}", r.fixed_field_degree));
        push(&mut out, format!("integral: {}", r.integral));
        push(
            &mut out,
            format!("bounds: {} <= deg <= {}", r.lower_bound, r.upper_bound),
        );
        match r.certified_degree {
            Some(d) => {
                let method = serde_json::to_value(r.certification_method)
                    .expect("method serialization cannot fail");
                let method = method.as_str().unwrap_or("unknown").to_string();
                let conductor = r
                    .reconstruction_conductor
                    .map(|m| format!(", conductor {m}"))
                    .unwrap_or_default();
                push(
                    &mut out,
                    format!("certified degree: {d} ({method}{conductor})"),
                );
            }
            None => push(&mut out, "certified degree: not certified".into()),
        }
        push(&mut out, format!("splitting field: {}", r.splitting_field_note));
    }

    if let Some(oc) = &output.oracle_check {
        push(
            &mut out,
            format!("oracle check: {}", if oc.consistent { "PASS" } else { "FAIL" }),
        );
        if oc.consistent {
            push(&mut out, format!("char poly: {}", oc.full_char_poly));
        } else {
            push(&mut out, format!("character product: {}", oc.full_char_poly));
            push(&mut out, format!("direct adjacency:  {}", oc.direct_char_poly));
        }
    }

    if let Some(inter) = &output.intermediates {
        push(&mut out, String::new());
        push(&mut out, format!("full char poly: {}", inter.full_char_poly));
        push(
            &mut out,
            format!("integer roots: [{}]", inter.integer_roots.join(", ")),
        );
        push(&mut out, format!("residual: {}", inter.residual_poly));
    }
    out
}
