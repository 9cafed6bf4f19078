//! Partition sums `b_T` and the divisibility decision.
//!
//! `b_T = Σ_{l=1}^{|T|} (l−1)! Σ_{𝒯 ∈ Π_T^l} Π_i a_{T_i}`, summing over the set
//! partitions of `T`. These are the mixed-partial coefficients of the series
//! `−log(1−P)` at the origin, and the model is accepted — i.e. the kernel
//! power `(1−P)^{−λ}` has nonnegative coefficients for every `λ > 0` —
//! exactly when every `b_T` is nonnegative.

use crate::subsetpoly::{partitions_of, AffineModel, SubsetId};
use crate::{Error, Result};

/// Dimension guard for full-table construction (2ⁿ−1 entries, Bell sums each).
pub const MAX_TABLE_DIMENSION: usize = 12;

/// Complete table of `b_T` over all nonempty `T ⊆ {1,…,n}`, in bitmask order.
#[derive(Clone, Debug)]
pub struct BTable {
    n: usize,
    values: Vec<f64>,
}

impl BTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, t: SubsetId) -> f64 {
        assert!(
            !t.is_empty() && t.bits() >> self.n == 0,
            "subset out of range for the table"
        );
        self.values[t.bits() as usize - 1]
    }

    /// Entries in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetId, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (SubsetId::from_bits(i as u32 + 1), v))
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `b_T` by direct enumeration of the set partitions of `T`.
pub fn compute_bt(model: &AffineModel, t: SubsetId) -> Result<f64> {
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    if t.bits() >> model.n() != 0 {
        return Err(Error::SubsetOutOfRange {
            subset: t.to_string(),
            n: model.n(),
        });
    }
    let mut total = 0.0;
    for partition in partitions_of(t)? {
        let mut prod = factorial(partition.len() - 1);
        for block in partition.blocks() {
            prod *= model.coeff(*block);
        }
        total += prod;
    }
    Ok(total)
}

/// The complete `b_T` table for all nonempty subsets.
pub fn bt_table(model: &AffineModel) -> Result<BTable> {
    let n = model.n();
    if n > MAX_TABLE_DIMENSION {
        return Err(Error::DimensionGuard(n));
    }
    let values = SubsetId::all_nonempty(n)
        .map(|t| compute_bt(model, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(BTable { n, values })
}

/// Outcome of the divisibility criterion.
#[derive(Clone, Debug, PartialEq)]
pub enum Divisibility {
    Accepted,
    /// First violating subset in bitmask order, with its `b_T` value.
    Rejected { witness: SubsetId, value: f64 },
}

impl Divisibility {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Divisibility::Accepted)
    }
}

/// Decision from an already-computed table: accepted iff `b_T ≥ −tol_b` for
/// every nonempty `T`.
pub fn decide_from_table(table: &BTable, tol_b: f64) -> Divisibility {
    for (t, b) in table.iter() {
        if b < -tol_b {
            return Divisibility::Rejected {
                witness: t,
                value: b,
            };
        }
    }
    Divisibility::Accepted
}

/// Strict criterion: accepted iff every `b_T ≥ 0`.
pub fn is_infinitely_divisible(model: &AffineModel) -> Result<Divisibility> {
    is_infinitely_divisible_with_tol(model, 0.0)
}

/// Criterion with slack `tol_b ≥ 0`, for models entered with rounded decimals.
pub fn is_infinitely_divisible_with_tol(model: &AffineModel, tol_b: f64) -> Result<Divisibility> {
    Ok(decide_from_table(&bt_table(model)?, tol_b))
}
