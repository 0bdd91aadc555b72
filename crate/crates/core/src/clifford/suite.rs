use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{
    check_graded_iso, cl1_splitting, cl2_matrix_model, cl2_mk_model, clifford, decompose_cl2_automorphism,
    equal_up_to_phase, graded_flip, inner_automorphism, juxtaposition_iso, koszul_conjugation_check, matrix_algebra,
    random_unitary, tensor_maps, theta, ungrade_inner, verify_cl1_splitting, CliffordError, GradedLinearMap, IsoVerdict,
};
use crate::linalg::{ComplexMatrix, GaussianRational};

/// One named identity and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

fn record(out: &mut Vec<SuiteCheck>, name: String, result: Result<Option<String>, CliffordError>) {
    let (passed, witness) = match result {
        Ok(None) => (true, None),
        Ok(Some(w)) => (false, Some(w)),
        Err(e) => (false, Some(e.to_string())),
    };
    out.push(SuiteCheck { name, passed, witness });
}

fn iso(v: IsoVerdict) -> Option<String> {
    v.failure.map(|f| f.to_string())
}

fn random_cl1_m2_automorphism(rng: &mut StdRng) -> Result<GradedLinearMap, CliffordError> {
    let cl1 = Arc::new(clifford(1));
    let nu = if rng.gen_bool(0.5) {
        GradedLinearMap::grading_automorphism(cl1)
    } else {
        GradedLinearMap::identity(cl1)
    };
    let m2 = Arc::new(matrix_algebra(2, None)?);
    Ok(tensor_maps(&nu, &inner_automorphism(m2, &random_unitary(2, rng))?))
}

/// Every shipped isomorphism and identity, with `trials` randomized samples where applicable.
pub fn verification_suite(seed: u64, trials: usize) -> Vec<SuiteCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 0..=5 {
        let r = clifford(n).check_invariants().err().map(|v| format!("{v:?}"));
        out.push(SuiteCheck { name: format!("Cl{n} invariants"), passed: r.is_none(), witness: r });
    }
    for m in 0..=5 {
        for n in 0..=5 - m {
            record(&mut out, format!("juxtaposition Cl{m} ⊗̂ Cl{n} → Cl{}", m + n), check_graded_iso(&juxtaposition_iso(m, n)).map(iso));
        }
    }
    record(&mut out, "Cl2 → M2 matrix model".into(), check_graded_iso(&cl2_matrix_model()).map(iso));
    for k in 2..=3 {
        record(&mut out, format!("Cl2 ⊗ M{k} → M{}", 2 * k), check_graded_iso(&cl2_mk_model(k)).map(iso));
    }
    record(&mut out, "graded flip Cl1 ⊗̂ Cl2".into(), check_graded_iso(&graded_flip(&clifford(1), &clifford(2))).map(iso));
    for k in 1..=3 {
        let r = matrix_algebra(k, None).and_then(|a| cl1_splitting(&a)).and_then(|t| verify_cl1_splitting(&t)).map(|v| {
            if v.passed() {
                None
            } else {
                Some(v.star_iso.failure.map_or("does not intertwine the gradings".into(), |f| f.to_string()))
            }
        });
        record(&mut out, format!("Cl1 ⊗̂ M{k} splitting"), r);
    }
    let one = GaussianRational::one();
    let r = matrix_algebra(2, Some(&ComplexMatrix::diagonal(&[one.clone(), -one]))).and_then(|b| {
        let v = b.basis(0).sub(&b.basis(3));
        check_graded_iso(&ungrade_inner(&b, &v)?).map(iso)
    });
    record(&mut out, "ungrade inner grading of M2".into(), r);
    for trial in 0..trials {
        let k = 1 + trial % 3;
        let (u, w, x) = (random_unitary(k, &mut rng), random_unitary(k, &mut rng), rng.gen_range(0..2u8));
        let r = theta(&u, x, &w).and_then(|f| {
            let d = decompose_cl2_automorphism(&f)?;
            if d.u != u || d.x != x || !equal_up_to_phase(&d.alpha_unitary, &w) {
                return Ok(Some(format!("decomposition {} differs from (u, x, w)", d.to_json())));
            }
            Ok((theta(&d.u, d.x, &d.alpha_unitary)? != f).then(|| "Θ(decompose(f)) ≠ f".to_string()))
        });
        record(&mut out, format!("Cl2 ⊗ M{k} decomposition round trip #{trial}"), r);
    }
    for trial in 0..trials {
        let r = random_cl1_m2_automorphism(&mut rng)
            .and_then(|a| Ok(tensor_maps(&a, &random_cl1_m2_automorphism(&mut rng)?)))
            .and_then(|f| koszul_conjugation_check(&f))
            .map(|ok| (!ok).then(|| "ε f ε ≠ τ f τ".to_string()));
        record(&mut out, format!("Koszul cancellation on (Cl1 ⊗̂ M2)^2 #{trial}"), r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let checks = verification_suite(3, 4);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(checks.len(), 6 + 21 + 1 + 2 + 1 + 3 + 1 + 8);
    }
}
