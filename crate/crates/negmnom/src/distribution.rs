//! Concrete negative multinomial distributions: normalized PGFs, pmf tables,
//! moments, and a seeded truncation-based sampler.
//!
//! A [`DistributionSpec`] couples an accepted model with a positive shift
//! point `a` (with `log a` inside the domain of existence) and an exponent
//! `λ > 0`; its PGF is `(A(a₁z₁,…,aₙzₙ)/A(a))^{−λ}` and its probabilities
//! are `p_α = c_α(λ)·a^α·A(a)^λ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisibility::{is_infinitely_divisible, Divisibility};
use crate::domain::{classify, Membership, DEFAULT_CLASSIFY_TOL};
use crate::series::{expand_neg_power, MultiIndex};
use crate::subsetpoly::{AffineModel, SubsetId};
use crate::{Error, Result};

/// Largest tolerated truncation tail when sampling.
pub const SAMPLE_TAIL_LIMIT: f64 = 1e-6;

/// A fully validated distribution: the model passes the divisibility
/// criterion, every shift entry is positive, and `log a` classifies inside
/// the domain of existence.
#[derive(Clone, Debug)]
pub struct DistributionSpec {
    model: AffineModel,
    shift: Vec<f64>,
    lambda: f64,
}

impl DistributionSpec {
    pub fn new(model: AffineModel, shift: Vec<f64>, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonpositiveLambda(lambda));
        }
        if shift.len() != model.n() {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                got: shift.len(),
            });
        }
        for (i, &v) in shift.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonpositiveShift { index: i, value: v });
            }
        }
        if let Divisibility::Rejected { witness, value } = is_infinitely_divisible(&model)? {
            return Err(Error::NotInfinitelyDivisible {
                witness: witness.to_string(),
                value,
            });
        }
        let theta: Vec<f64> = shift.iter().map(|v| v.ln()).collect();
        let verdict = classify(&model, &theta, DEFAULT_CLASSIFY_TOL)?;
        if verdict.classification != Membership::Inside {
            return Err(Error::OutsideDomain {
                margin: verdict.margin,
            });
        }
        Ok(DistributionSpec {
            model,
            shift,
            lambda,
        })
    }

    pub fn model(&self) -> &AffineModel {
        &self.model
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `A(a₁,…,aₙ)`; strictly positive for a valid spec.
    pub fn kernel_at_shift(&self) -> f64 {
        self.model.eval_a(&self.shift).expect("spec validated")
    }
}

/// Coefficient table of the affine polynomial whose `−λ` power is the PGF:
/// constant `1/A(a)` and `z^T` coefficient `−a_T·a^T/A(a)`, complete over
/// all nonempty subsets.
#[derive(Clone, Debug)]
pub struct NormalizedPgf {
    n: usize,
    constant: f64,
    terms: Vec<f64>,
}

impl NormalizedPgf {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn coefficient(&self, t: SubsetId) -> f64 {
        assert!(
            !t.is_empty() && t.bits() >> self.n == 0,
            "subset out of range for the table"
        );
        self.terms[t.bits() as usize - 1]
    }

    /// All nonempty subsets in bitmask order (zeros included).
    pub fn terms(&self) -> impl Iterator<Item = (SubsetId, f64)> + '_ {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, &v)| (SubsetId::from_bits(i as u32 + 1), v))
    }

    /// Value of the polynomial at `z`; equals 1 at `z = (1,…,1)`.
    pub fn eval(&self, z: &[f64]) -> f64 {
        let mut total = self.constant;
        for (t, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            let mut prod = c;
            let mut bits = t.bits();
            while bits != 0 {
                prod *= z[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            total += prod;
        }
        total
    }
}

/// The normalized PGF polynomial `A(a₁z₁,…,aₙzₙ)/A(a)` as a table.
pub fn normalized_pgf(spec: &DistributionSpec) -> NormalizedPgf {
    let n = spec.model().n();
    let a_val = spec.kernel_at_shift();
    let scaled = spec
        .model()
        .scale(spec.shift())
        .expect("spec validated");
    let mut terms = vec![0.0; (1usize << n) - 1];
    for (t, c) in scaled.terms() {
        terms[t.bits() as usize - 1] = -c / a_val;
    }
    NormalizedPgf {
        n,
        constant: 1.0 / a_val,
        terms,
    }
}

/// Truncated probability table: `p_α` for `|α| ≤ cap` in graded
/// lexicographic order, plus the tail-mass estimate `1 − Σ p_α`.
#[derive(Clone, Debug)]
pub struct PmfTable {
    n: usize,
    cap: usize,
    entries: Vec<(MultiIndex, f64)>,
    total: f64,
}

impl PmfTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn entries(&self) -> &[(MultiIndex, f64)] {
        &self.entries
    }

    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub fn tail_mass(&self) -> f64 {
        1.0 - self.total
    }

    pub fn prob(&self, alpha: &[u32]) -> f64 {
        self.entries
            .iter()
            .find(|(a, _)| a == alpha)
            .map(|&(_, p)| p)
            .unwrap_or(0.0)
    }
}

/// `p_α = c_α(λ)·a^α·A(a)^λ` for `|α| ≤ cap`, from one expansion of the
/// un-normalized model rescaled analytically.
pub fn pmf(spec: &DistributionSpec, cap: usize) -> Result<PmfTable> {
    let series = expand_neg_power(spec.model(), spec.lambda(), cap)?;
    let norm = spec.kernel_at_shift().powf(spec.lambda());
    let a = spec.shift();
    let mut total = 0.0;
    let entries: Vec<(MultiIndex, f64)> = series
        .coefficients()
        .map(|(alpha, c)| {
            let weight: f64 = a
                .iter()
                .zip(&alpha)
                .map(|(&ai, &k)| ai.powi(k as i32))
                .product();
            let p = c * weight * norm;
            total += p;
            (alpha, p)
        })
        .collect();
    Ok(PmfTable {
        n: spec.model().n(),
        cap,
        entries,
        total,
    })
}

/// Mean vector: component `j` is `−λ·a_j·(∂A/∂z_j)(a)/A(a)`.
pub fn mean(spec: &DistributionSpec) -> Vec<f64> {
    let model = spec.model();
    let a = spec.shift();
    let a_val = spec.kernel_at_shift();
    (1..=model.n())
        .map(|j| {
            // ∂P/∂z_j at a: Σ_{T∋j} a_T a^{T∖{j}}
            let dp: f64 = model
                .terms()
                .filter(|(t, _)| t.contains(j))
                .map(|(t, c)| {
                    let mut prod = c;
                    let mut bits = t.bits() & !(1 << (j - 1));
                    while bits != 0 {
                        prod *= a[bits.trailing_zeros() as usize];
                        bits &= bits - 1;
                    }
                    prod
                })
                .sum();
            spec.lambda() * a[j - 1] * dp / a_val
        })
        .collect()
}

/// `count` i.i.d. draws by inverse CDF over the truncated table, renormalized
/// by its own sum. Requires the tail mass at `cap` to be below
/// [`SAMPLE_TAIL_LIMIT`]. Deterministic for a fixed seed.
pub fn sample(spec: &DistributionSpec, count: usize, seed: u64, cap: usize) -> Result<Vec<MultiIndex>> {
    let table = pmf(spec, cap)?;
    let tail = table.tail_mass();
    if !(tail < SAMPLE_TAIL_LIMIT) {
        return Err(Error::ExcessTailMass {
            tail,
            limit: SAMPLE_TAIL_LIMIT,
        });
    }
    let norm = table.total_mass();
    let mut cdf = Vec::with_capacity(table.entries().len());
    let mut acc = 0.0;
    for (_, p) in table.entries() {
        acc += p.max(0.0) / norm;
        cdf.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(count);
    for _ in 0..count {
        let u: f64 = rng.gen();
        let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
        draws.push(table.entries()[idx].0.clone());
    }
    Ok(draws)
}
