//! Generated instances against the pipeline and independent oracles.

use hypercircle::generate::{generate, random_field, Kind};
use hypercircle::hypercircle::{
    conjugate_parametrization, standard_parametrization, sums_to_t, verify_identity, ClassOutcome,
};
use hypercircle::instance::parse_field;
use hypercircle::linalg;
use hypercircle::ratfunc::Parametrization;
use hypercircle::witness::{check_on_witness, weil_substitution};
use hypercircle::{AlgElem, AlgField, Field};

/// Implicit equation of a plane curve of degree `d` by undetermined
/// coefficients, normalized so that its first nonzero coefficient is 1.
fn implicit_equation(psi: &Parametrization<AlgElem>, k: &AlgField) -> Vec<AlgElem> {
    let d = psi.degree();
    let monomials: Vec<(u64, u64)> = (0..=d as u64)
        .flat_map(|i| (0..=d as u64 - i).map(move |j| (i, j)))
        .collect();
    // F(ψ(t))·q(t)^d has degree ≤ d², so d² + 1 regular samples decide it
    let mut rows = Vec::new();
    let mut t = 0i64;
    while rows.len() < d * d + 1 + monomials.len() {
        let p = psi.eval(&k.from_i64(t), k);
        t += 1;
        let Some(p) = p else { continue };
        rows.push(
            monomials
                .iter()
                .map(|&(i, j)| k.mul(&k.pow(&p[0], i), &k.pow(&p[1], j)))
                .collect::<Vec<_>>(),
        );
    }
    let kernel = linalg::kernel(&rows, monomials.len(), k).unwrap();
    assert_eq!(kernel.len(), 1, "implicit equation is unique up to scaling");
    let v = &kernel[0];
    let lead = v.iter().find(|c| !k.is_zero(c)).unwrap().clone();
    v.iter().map(|c| k.div(c, &lead).unwrap()).collect()
}

fn defined_over_q_by_implicitization(psi: &Parametrization<AlgElem>, k: &AlgField) -> bool {
    implicit_equation(psi, k)
        .iter()
        .all(|c| k.as_rational(c).is_some())
}

#[test]
fn defined_instances_are_recognized_with_their_identities() {
    for (seed, (d, n)) in [(2, 2), (3, 3), (4, 2), (3, 4), (5, 3)]
        .into_iter()
        .enumerate()
    {
        let k = random_field(n, seed as u64).unwrap();
        let psi = generate(Kind::Defined, d, &k, seed as u64).unwrap().psi;
        let result = standard_parametrization(&psi, &k).unwrap();
        let phi = result.phi().expect("defined by construction");
        assert!(sums_to_t(phi, &k).unwrap());
        for r in &result.classes {
            let ClassOutcome::Fixed(u) = &r.outcome else {
                panic!("class not fixed")
            };
            let rel = r.class.relative_field();
            assert!(verify_identity(
                &psi,
                &conjugate_parametrization(&psi, &r.class),
                u,
                rel
            ));
        }
        assert!(defined_over_q_by_implicitization(&psi, &k));
    }
}

#[test]
fn twisted_instances_are_not_defined() {
    for seed in 0..4 {
        let k = random_field(2 + seed as usize % 2, seed).unwrap();
        let psi = generate(Kind::Twisted, 3, &k, seed).unwrap().psi;
        assert!(!standard_parametrization(&psi, &k).unwrap().is_defined());
        assert!(!defined_over_q_by_implicitization(&psi, &k));
    }
}

#[test]
fn defined_phi_lies_on_the_witness_variety() {
    for seed in 0..4 {
        let k = random_field(2 + seed as usize % 2, 100 + seed).unwrap();
        let psi = generate(Kind::Defined, 2 + seed as usize % 3, &k, seed)
            .unwrap()
            .psi;
        let result = standard_parametrization(&psi, &k).unwrap();
        let sys = weil_substitution(&psi, &k).unwrap();
        assert!(check_on_witness(&sys, result.phi().unwrap(), &k).unwrap());
    }
}

#[test]
fn adversarial_construction_matches_implicitization() {
    let k = parse_field(include_str!("../../../data/cyclotomic5.json")).unwrap();
    let gen = generate(Kind::Adversarial, 4, &k, 0).unwrap();
    let result = standard_parametrization(&gen.psi, &k).unwrap();
    assert_eq!(
        result.is_defined(),
        defined_over_q_by_implicitization(&gen.psi, &k)
    );
    assert!(result.max_params_tried() > 3);
}
