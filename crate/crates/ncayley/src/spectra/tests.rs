use super::*;
use crate::ga_matrix::example_spec_z7;
use crate::galois::in_fixed_field;

fn el(r: u64) -> GroupElement {
    GroupElement::new(vec![r])
}

fn circulant(n: u64, set: &[u64]) -> NCayleySpec {
    let g = FiniteAbelianGroup::new(vec![n]).unwrap();
    NCayleySpec::new(g, 1, vec![set.iter().map(|&r| el(r)).collect()]).unwrap()
}

fn rational_poly(conductor: u64, coeffs: &[(i64, i64)]) -> CycloPolynomial {
    CycloPolynomial::new(
        conductor,
        coeffs
            .iter()
            .map(|&(num, den)| {
                CyclotomicNumber::from_rational(
                    conductor,
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                )
            })
            .collect(),
    )
}

#[test]
fn char_poly_of_trivial_character_is_all_twos_matrix() {
    // every connection set of the worked example has 2 elements, so the
    // transform at chi_0 is the all-2s 3x3 matrix with char poly x^3 - 6x^2
    let spec = example_spec_z7();
    let delta = GAMatrix::delta_matrix(&spec);
    let p = char_poly_at(&delta, &el(0)).unwrap();
    assert!(p.is_monic());
    assert_eq!(p.to_integer().unwrap(), IntPolynomial::from_i64(&[0, 0, -6, 1]));
}

#[test]
fn char_poly_of_zero_matrix_is_power_of_x() {
    let g = FiniteAbelianGroup::new(vec![4]).unwrap();
    let spec = NCayleySpec::new(g, 2, vec![vec![], vec![], vec![], vec![]]).unwrap();
    let delta = GAMatrix::delta_matrix(&spec);
    for v in spec.group().elements() {
        let p = char_poly_at(&delta, &v).unwrap();
        assert_eq!(p.to_integer().unwrap(), IntPolynomial::from_i64(&[0, 0, 1]));
    }
}

#[test]
fn char_poly_single_entry() {
    // n=1, S={1} over Z_4 at v=1: x - w4 (the character sum over S)
    let spec = circulant(4, &[1]);
    let delta = GAMatrix::delta_matrix(&spec);
    let p = char_poly_at(&delta, &el(1)).unwrap();
    assert_eq!(p.degree(), 1);
    assert_eq!(p.coeff(0), CyclotomicNumber::root_power(4, 1).neg());
    assert_eq!(p.coeff(1), CyclotomicNumber::one(4));
}

#[test]
fn beta_route_matches_determinant_route() {
    let spec = example_spec_z7();
    let delta = GAMatrix::delta_matrix(&spec);
    for v in spec.group().elements() {
        assert_eq!(
            char_poly_at(&delta, &v).unwrap(),
            char_poly_direct(&delta, &v).unwrap(),
            "routes disagree at v={v:?}"
        );
    }
}

#[test]
fn char_poly_constant_on_orbits() {
    let spec = example_spec_z7();
    let delta = GAMatrix::delta_matrix(&spec);
    let betas = delta.beta_all();
    let h = stabilizer_subgroup(&betas[1..], spec.group()).unwrap();
    let orbits = orbit_decomposition(spec.group(), &h).unwrap();
    for (orbit, rep) in orbits.orbits().iter().zip(orbits.representatives()) {
        let rep_poly = char_poly_from_betas(&betas, spec.group(), rep).unwrap();
        for v in orbit {
            assert_eq!(
                char_poly_from_betas(&betas, spec.group(), v).unwrap(),
                rep_poly
            );
        }
    }
}

#[test]
fn beta_coefficients_lie_in_the_fixed_field() {
    let spec = example_spec_z7();
    let delta = GAMatrix::delta_matrix(&spec);
    let betas = delta.beta_all();
    let h = stabilizer_subgroup(&betas[1..], spec.group()).unwrap();
    for beta in &betas {
        for v in spec.group().elements() {
            let hat = beta.fourier_coefficient(&v).unwrap();
            assert!(in_fixed_field(&hat, &h).unwrap());
        }
    }
}

#[test]
fn full_char_poly_of_directed_and_undirected_cycles() {
    assert_eq!(
        full_char_poly(&circulant(4, &[1])).unwrap(),
        IntPolynomial::from_i64(&[-1, 0, 0, 0, 1])
    );
    assert_eq!(
        full_char_poly(&circulant(4, &[1, 3])).unwrap(),
        IntPolynomial::from_i64(&[0, 0, -4, 0, 1])
    );
}

#[test]
fn integrality_examples() {
    // x^4 - 4x^2: roots {-2, 0, 0, 2}
    let r = integrality_test(&IntPolynomial::from_i64(&[0, 0, -4, 0, 1])).unwrap();
    assert!(r.integral);
    assert_eq!(
        r.integer_roots,
        vec![BigInt::from(-2), BigInt::zero(), BigInt::zero(), BigInt::from(2)]
    );
    assert_eq!(r.residual.degree(), 0);

    // x^4 - 1: roots {1, -1}, residual x^2 + 1
    let r = integrality_test(&IntPolynomial::from_i64(&[-1, 0, 0, 0, 1])).unwrap();
    assert!(!r.integral);
    assert_eq!(r.integer_roots, vec![BigInt::from(-1), BigInt::from(1)]);
    assert_eq!(r.residual, IntPolynomial::from_i64(&[1, 0, 1]));

    // x^n: n zero roots
    let r = integrality_test(&IntPolynomial::from_i64(&[0, 0, 0, 0, 0, 1])).unwrap();
    assert!(r.integral);
    assert_eq!(r.integer_roots, vec![BigInt::zero(); 5]);

    // non-monic input is rejected
    assert!(integrality_test(&IntPolynomial::from_i64(&[1, 2])).is_err());
}

#[test]
fn integrality_with_repeated_nonzero_roots() {
    // (x-3)^2 (x+1)^3 = expanded
    let p = IntPolynomial::from_i64(&[-3, 1])
        .mul(&IntPolynomial::from_i64(&[-3, 1]))
        .mul(&IntPolynomial::from_i64(&[1, 1]))
        .mul(&IntPolynomial::from_i64(&[1, 1]))
        .mul(&IntPolynomial::from_i64(&[1, 1]));
    let r = integrality_test(&p).unwrap();
    assert!(r.integral);
    assert_eq!(
        r.integer_roots,
        vec![
            BigInt::from(-1),
            BigInt::from(-1),
            BigInt::from(-1),
            BigInt::from(3),
            BigInt::from(3)
        ]
    );
}

#[test]
fn eigen_numeric_of_the_directed_four_cycle() {
    let spec = circulant(4, &[1]);
    let eigen = eigen_numeric(&spec, 128).unwrap();
    let total: usize = eigen.iter().map(|e| e.multiplicity).sum();
    assert_eq!(total, 4);
    // the four 4th roots of unity, one per character
    let mut found = [false; 4];
    for e in &eigen {
        let (re, im) = e.value.to_f64s();
        for (k, target) in [(0usize, (1.0, 0.0)), (1, (0.0, 1.0)), (2, (-1.0, 0.0)), (3, (0.0, -1.0))]
        {
            if (re - target.0).abs() < 1e-12 && (im - target.1).abs() < 1e-12 {
                found[k] = true;
            }
        }
    }
    assert!(found.iter().all(|&b| b));
}

#[test]
fn eigen_numeric_of_the_five_cycle() {
    // undirected 5-cycle: spectrum {2, 0.618.., 0.618.., -1.618.., -1.618..}
    let spec = circulant(5, &[1, 4]);
    let eigen = eigen_numeric(&spec, 128).unwrap();
    let mut values: Vec<f64> = eigen
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.value.to_f64s().0, e.multiplicity))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let expected = [
        -1.618_033_988_749_895,
        -1.618_033_988_749_895,
        0.618_033_988_749_895,
        0.618_033_988_749_895,
        2.0,
    ];
    for (got, want) in values.iter().zip(expected) {
        assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
    }
    for e in &eigen {
        assert!(e.value.to_f64s().1.abs() < 1e-12, "spectrum is real");
    }
}

#[test]
fn eigen_numeric_of_empty_sets_is_all_zeros() {
    let g = FiniteAbelianGroup::new(vec![3]).unwrap();
    let spec = NCayleySpec::new(g, 2, vec![vec![], vec![], vec![], vec![]]).unwrap();
    let eigen = eigen_numeric(&spec, 128).unwrap();
    let total: usize = eigen.iter().map(|e| e.multiplicity).sum();
    assert_eq!(total, 6);
    for e in &eigen {
        assert!(e.value.is_zero());
    }
}

#[test]
fn eigen_numeric_rejects_low_precision() {
    let spec = circulant(4, &[1]);
    assert!(matches!(
        eigen_numeric(&spec, 32),
        Err(Error::PrecisionTooLow(32))
    ));
}

#[test]
fn eigenvalues_are_roots_of_the_full_polynomial() {
    // numeric consistency between the per-character spectra and the
    // product polynomial
    let precision = 128u32;
    let spec = example_spec_z7();
    let full = full_char_poly(&spec).unwrap();
    let eigen = eigen_numeric(&spec, precision).unwrap();
    let total: usize = eigen.iter().map(|e| e.multiplicity).sum();
    assert_eq!(total, 21);
    let scale = eigen[0].value.scale;
    for e in &eigen {
        // Horner with exact integer coefficients scaled into fixed point
        let mut acc = BigComplex::zero(scale);
        for c in full.coeffs().iter().rev() {
            let c_fixed = BigComplex::from_rational(&BigRational::from_integer(c.clone()), scale);
            acc = acc.mul(&e.value).add(&c_fixed);
        }
        assert!(
            acc.below_pow2(-(precision as i64) / 4),
            "eigenvalue is not a root of the full polynomial"
        );
    }
}

#[test]
fn reconstruct_golden_ratio_in_conductor_five() {
    // x^2 + x - 1 has the Gauss period w5 + w5^4 as its positive root
    let poly = rational_poly(5, &[(-1, 1), (1, 1), (1, 1)]);
    let roots = distinct_roots_of(&poly, 256).unwrap();
    let positive = roots
        .iter()
        .map(|(z, _)| z)
        .find(|z| z.to_f64s().0 > 0.0)
        .unwrap();
    let c = cyclotomic_reconstruct(positive, 5, &poly).unwrap().unwrap();
    let expected = CyclotomicNumber::root_power(5, 1)
        .add(&CyclotomicNumber::root_power(5, 4))
        .unwrap();
    assert_eq!(c, expected);
}

#[test]
fn reconstruct_a_plain_rational() {
    let poly = rational_poly(4, &[(-1, 2), (1, 1)]); // x - 1/2
    let roots = distinct_roots_of(&poly, 256).unwrap();
    let c = cyclotomic_reconstruct(&roots[0].0, 4, &poly).unwrap().unwrap();
    assert_eq!(
        c.to_rational(),
        Some(BigRational::new(BigInt::one(), BigInt::from(2)))
    );
}

#[test]
fn reconstruct_sqrt_two_in_conductor_eight() {
    let poly = rational_poly(8, &[(-2, 1), (0, 1), (1, 1)]); // x^2 - 2
    let roots = distinct_roots_of(&poly, 256).unwrap();
    let positive = roots
        .iter()
        .map(|(z, _)| z)
        .find(|z| z.to_f64s().0 > 0.0)
        .unwrap();
    let c = cyclotomic_reconstruct(positive, 8, &poly).unwrap().unwrap();
    let expected = CyclotomicNumber::root_power(8, 1)
        .sub(&CyclotomicNumber::root_power(8, 3))
        .unwrap();
    assert_eq!(c, expected);
}

#[test]
fn reconstruct_rejects_perturbed_values() {
    // a 1e-6 perturbation at 256-bit precision must not verify
    let poly = rational_poly(5, &[(-1, 1), (1, 1), (1, 1)]);
    let roots = distinct_roots_of(&poly, 256).unwrap();
    let positive = roots
        .iter()
        .map(|(z, _)| z)
        .find(|z| z.to_f64s().0 > 0.0)
        .unwrap();
    let perturbed = positive.add(&BigComplex::from_f64s(1e-6, 0.0, positive.scale));
    assert!(cyclotomic_reconstruct(&perturbed, 5, &poly).unwrap().is_none());
}

#[test]
fn reconstruct_fails_when_value_is_outside_the_field() {
    // sqrt(2) is not in Q(w_5)
    let poly = rational_poly(5, &[(-2, 1), (0, 1), (1, 1)]);
    let roots = distinct_roots_of(&poly, 256).unwrap();
    let positive = roots
        .iter()
        .map(|(z, _)| z)
        .find(|z| z.to_f64s().0 > 0.0)
        .unwrap();
    assert!(cyclotomic_reconstruct(positive, 5, &poly).unwrap().is_none());
}

#[test]
fn square_free_decomposition_recovers_multiplicities() {
    // (x - 1)^2 (x + 2) over Q(w_4)
    let f1 = rational_poly(4, &[(-1, 1), (1, 1)]);
    let f2 = rational_poly(4, &[(2, 1), (1, 1)]);
    let p = f1.mul(&f1).unwrap().mul(&f2).unwrap();
    let decomp = p.square_free_decomposition().unwrap();
    assert_eq!(decomp.len(), 2);
    assert!(decomp.contains(&(f2, 1)));
    assert!(decomp.contains(&(f1, 2)));
}

#[test]
fn conductor_sequence_respects_the_cap() {
    assert_eq!(conductor_sequence(7, 56), vec![7, 14, 21, 28]);
    assert_eq!(conductor_sequence(7, 7), vec![7]);
    assert_eq!(conductor_sequence(6, 48), vec![6, 12, 24]); // lcm(6,3) = 6 deduped
    assert_eq!(conductor_sequence(4, 32), vec![4, 8, 12, 16]);
}

#[test]
fn report_for_the_worked_example() {
    let spec = example_spec_z7();
    let analysis = analyze(&spec, &AnalyzeOptions::default()).unwrap();
    let report = &analysis.report;
    assert!(!report.integral);
    assert_eq!(report.lower_bound, 2);
    assert_eq!(report.upper_bound, 432);
    assert_eq!(report.certified_degree, Some(2));
    assert_eq!(
        report.certification_method,
        CertificationMethod::CyclotomicReconstruction
    );
    assert_eq!(report.reconstruction_conductor, Some(7));
    assert_eq!(analysis.stabilizer.members(), vec![1, 2, 4]);
    assert_eq!(analysis.orbits.orbit_count(), 3);
}

#[test]
fn report_for_integral_circulant() {
    let analysis = analyze(&circulant(4, &[1, 3]), &AnalyzeOptions::default()).unwrap();
    assert!(analysis.report.integral);
    assert_eq!(analysis.report.certified_degree, Some(1));
    assert_eq!(
        analysis.report.certification_method,
        CertificationMethod::NEquals1
    );
}

#[test]
fn report_for_directed_four_cycle() {
    let report = degree_report(&circulant(4, &[1]), &AnalyzeOptions::default()).unwrap();
    assert!(!report.integral);
    assert_eq!(report.certified_degree, Some(2));
    assert_eq!(report.certification_method, CertificationMethod::NEquals1);
    assert_eq!(report.lower_bound, 2);
}

#[test]
fn report_for_empty_two_block_spec() {
    let g = FiniteAbelianGroup::new(vec![3]).unwrap();
    let spec = NCayleySpec::new(g, 2, vec![vec![], vec![], vec![], vec![]]).unwrap();
    let report = degree_report(&spec, &AnalyzeOptions::default()).unwrap();
    assert!(report.integral);
    assert_eq!(report.certified_degree, Some(1));
    assert_eq!(
        report.certification_method,
        CertificationMethod::AllRational
    );
}

#[test]
fn reconstruction_certifies_a_two_block_disjoint_union() {
    // two disjoint directed 5-cycles as a 2-Cayley digraph: eigenvalues are
    // all the 5th roots of unity, so the splitting field is Q(w_5)
    let g = FiniteAbelianGroup::new(vec![5]).unwrap();
    let spec = NCayleySpec::new(
        g,
        2,
        vec![vec![el(1)], vec![], vec![], vec![el(4)]],
    )
    .unwrap();
    let analysis = analyze(&spec, &AnalyzeOptions::default()).unwrap();
    let report = &analysis.report;
    assert!(!report.integral);
    assert_eq!(analysis.stabilizer.members(), vec![1, 4]);
    assert_eq!(report.lower_bound, 2);
    assert_eq!(report.certified_degree, Some(4));
    assert_eq!(
        report.certification_method,
        CertificationMethod::CyclotomicReconstruction
    );
    assert_eq!(report.reconstruction_conductor, Some(5));
}

#[test]
fn tight_conductor_cap_degrades_to_bounds_only() {
    let g = FiniteAbelianGroup::new(vec![5]).unwrap();
    let spec = NCayleySpec::new(
        g,
        2,
        vec![vec![el(1)], vec![], vec![], vec![el(4)]],
    )
    .unwrap();
    let options = AnalyzeOptions {
        precision_bits: 256,
        max_conductor: Some(2),
    };
    let report = degree_report(&spec, &options).unwrap();
    assert_eq!(report.certified_degree, None);
    assert_eq!(report.certification_method, CertificationMethod::None);
    assert_eq!(report.reconstruction_conductor, None);
    assert_eq!((report.lower_bound, report.upper_bound), (2, 16));
}

#[test]
fn bounds_sandwich_certified_degrees() {
    let specs = [
        circulant(4, &[1]),
        circulant(5, &[1, 4]),
        circulant(4, &[1, 3]),
        circulant(7, &[1, 2, 4]),
    ];
    for spec in &specs {
        let report = degree_report(spec, &AnalyzeOptions::default()).unwrap();
        let c = report.certified_degree.unwrap();
        assert!(report.lower_bound <= c && c <= report.upper_bound);
        if report.integral {
            assert_eq!(c, 1);
        }
    }
}
