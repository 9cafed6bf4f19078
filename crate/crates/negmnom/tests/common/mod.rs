#![allow(dead_code)]

use negmnom::{compute_bt, AffineModel, SubsetId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Bivariate family A = 1 − z₁ − z₂ − a·z₁z₂ (unit singleton coefficients).
pub fn bivariate(a: f64) -> AffineModel {
    AffineModel::new(2)
        .unwrap()
        .with_term(&[1], 1.0)
        .unwrap()
        .with_term(&[2], 1.0)
        .unwrap()
        .with_term(&[1, 2], a)
        .unwrap()
}

/// Trivariate family A = 1 − Σzᵢ − a·Σzᵢzⱼ − b·z₁z₂z₃.
pub fn trivariate(a: f64, b: f64) -> AffineModel {
    let mut m = AffineModel::new(3).unwrap();
    for i in 1..=3 {
        m = m.with_term(&[i], 1.0).unwrap();
    }
    for pair in [[1, 2], [1, 3], [2, 3]] {
        m = m.with_term(&pair, a).unwrap();
    }
    m.with_term(&[1, 2, 3], b).unwrap()
}

/// Random model with coefficients in `(-amp, amp)`; no sign constraints.
pub fn random_model(rng: &mut ChaCha8Rng, n: usize, amp: f64) -> AffineModel {
    let mut m = AffineModel::new(n).unwrap();
    for t in SubsetId::all_nonempty(n) {
        if rng.gen_bool(0.85) {
            m.set_coeff(t, rng.gen_range(-amp..amp)).unwrap();
        }
    }
    m
}

/// Random model passing the divisibility criterion: singleton coefficients
/// are drawn positive, and each higher-order coefficient is lifted by `−b_T`
/// whenever `b_T` lands negative (the single-block partition contributes
/// `a_T` linearly, so this puts `b_T` exactly at 0).
pub fn random_accepted_model(rng: &mut ChaCha8Rng, n: usize) -> AffineModel {
    let mut m = AffineModel::new(n).unwrap();
    for i in 1..=n {
        m = m.with_term(&[i], rng.gen_range(0.05..1.0)).unwrap();
    }
    let mut higher: Vec<SubsetId> = SubsetId::all_nonempty(n)
        .filter(|t| t.cardinality() >= 2)
        .collect();
    higher.sort_by_key(|t| (t.cardinality(), t.bits()));
    for t in higher {
        let coeff = rng.gen_range(-0.6..0.6);
        m.set_coeff(t, coeff).unwrap();
        let b = compute_bt(&m, t).unwrap();
        if b < 0.0 {
            m.set_coeff(t, coeff - b).unwrap();
        }
    }
    m
}

/// 0/1 exponent vector of a subset.
pub fn indicator(t: SubsetId, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((t.bits() >> i) & 1) as u32).collect()
}
