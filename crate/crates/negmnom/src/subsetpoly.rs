//! Subset-indexed affine polynomial algebra and set-partition enumeration.
//!
//! The central object is [`AffineModel`], the polynomial
//! `P(z) = Σ_{T≠∅} a_T z^T` over nonempty subsets `T` of `{1,…,n}` with
//! `z^T = Π_{t∈T} z_t`, together with its kernel `A = 1 − P`. Coefficients
//! are stored sparsely by bitmask; a missing subset means `a_T = 0`.
//! [`partitions_of`] enumerates the set partitions of a subset, which drive
//! the `b_T` sums of the divisibility module.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Hard cap on the dimension `n`; keeps subset tables dense-addressable.
pub const MAX_DIMENSION: usize = 24;

/// Hard cap on `|T|` for partition enumeration (Bell-number growth guard).
pub const MAX_PARTITION_SET: usize = 12;

/// A subset of `{1,…,n}` encoded as a bitmask: bit `i−1` set ⇔ index `i` present.
///
/// The `Ord` instance is plain bitmask order, which is the tie-breaking order
/// used everywhere a "first" subset has to be reported deterministically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetId(u32);

impl SubsetId {
    pub fn from_bits(bits: u32) -> Self {
        SubsetId(bits)
    }

    /// Builds a subset from strictly ascending 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut bits = 0u32;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_DIMENSION {
                return Err(Error::InvalidSubset(format!(
                    "index {i} out of range 1..={MAX_DIMENSION}"
                )));
            }
            if i <= prev {
                return Err(Error::InvalidSubset(
                    "indices must be strictly ascending".into(),
                ));
            }
            bits |= 1 << (i - 1);
            prev = i;
        }
        Ok(SubsetId(bits))
    }

    /// Parses a label of the form `"1,2,4"` (ascending 1-based indices).
    pub fn from_label(label: &str) -> Result<Self> {
        if label.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut indices = Vec::new();
        for part in label.split(',') {
            let i: usize = part
                .parse()
                .map_err(|_| Error::InvalidSubset(format!("bad index {part:?}")))?;
            indices.push(i);
        }
        Self::from_indices(&indices)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Membership of a 1-based index.
    pub fn contains(self, index: usize) -> bool {
        index >= 1 && index <= MAX_DIMENSION && (self.0 >> (index - 1)) & 1 == 1
    }

    /// Ascending 1-based indices of the subset.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cardinality());
        let mut bits = self.0;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize + 1);
            bits &= bits - 1;
        }
        out
    }

    /// All nonempty subsets of `{1,…,n}` in bitmask order.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = SubsetId> {
        (1..(1u32 << n)).map(SubsetId)
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// A set partition of some subset `T`: pairwise-disjoint nonempty blocks
/// whose union is `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<SubsetId>,
}

impl Partition {
    /// Number of blocks (the partition's length `l`).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[SubsetId] {
        &self.blocks
    }
}

/// Enumerates every set partition of `t` exactly once (Bell(|T|) in total).
///
/// Enumeration is by restricted-growth strings, so the order is canonical and
/// duplicate-free. Guarded at `|T| ≤ 12`.
pub fn partitions_of(t: SubsetId) -> Result<Partitions> {
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    let card = t.cardinality();
    if card > MAX_PARTITION_SET {
        return Err(Error::PartitionGuard(card));
    }
    let mut members = Vec::with_capacity(card);
    let mut bits = t.bits();
    while bits != 0 {
        members.push(bits.trailing_zeros());
        bits &= bits - 1;
    }
    Ok(Partitions {
        members,
        rgs: vec![0; card],
        started: false,
        done: false,
    })
}

/// Iterator over the set partitions of a subset. See [`partitions_of`].
pub struct Partitions {
    members: Vec<u32>,
    rgs: Vec<u8>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn current(&self) -> Partition {
        let nblocks = self.rgs.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut masks = vec![0u32; nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            masks[b as usize] |= 1 << self.members[i];
        }
        Partition {
            blocks: masks.into_iter().map(SubsetId::from_bits).collect(),
        }
    }

    fn advance(&mut self) -> bool {
        let k = self.rgs.len();
        for i in (1..k).rev() {
            let prefix_max = *self.rgs[..i].iter().max().expect("nonempty prefix");
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for j in i + 1..k {
                    self.rgs[j] = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        if self.advance() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// The affine polynomial `P(z) = Σ_{T≠∅} a_T z^T` with sparse coefficients.
///
/// `P(0,…,0) = 0` by construction (no constant term can be stored), so the
/// kernel `A = 1 − P` satisfies `A(0,…,0) = 1`. Models are immutable in
/// practice: every operation returns a new value.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineModel {
    n: usize,
    coeffs: BTreeMap<SubsetId, f64>,
}

impl AffineModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange(n));
        }
        Ok(AffineModel {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builder-style insertion by 1-based indices.
    pub fn with_term(mut self, indices: &[usize], coeff: f64) -> Result<Self> {
        let t = SubsetId::from_indices(indices)?;
        self.set_coeff(t, coeff)?;
        Ok(self)
    }

    pub fn set_coeff(&mut self, t: SubsetId, coeff: f64) -> Result<()> {
        self.check_subset(t)?;
        if !coeff.is_finite() {
            return Err(Error::InvalidModel(format!(
                "coefficient for {{{t}}} is not finite"
            )));
        }
        self.coeffs.insert(t, coeff);
        Ok(())
    }

    fn check_subset(&self, t: SubsetId) -> Result<()> {
        if t.is_empty() {
            return Err(Error::EmptySubset);
        }
        if t.bits() >> self.n != 0 {
            return Err(Error::SubsetOutOfRange {
                subset: t.to_string(),
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `z^T`; absent subsets read as 0.
    pub fn coeff(&self, t: SubsetId) -> f64 {
        self.coeffs.get(&t).copied().unwrap_or(0.0)
    }

    /// Stored terms in bitmask order. Explicit zeros are kept.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetId, f64)> + '_ {
        self.coeffs.iter().map(|(&t, &c)| (t, c))
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `P(z) = Σ_T a_T z^T`.
    pub fn eval_p(&self, z: &[f64]) -> Result<f64> {
        self.check_len(z)?;
        let mut total = 0.0;
        for (&t, &c) in &self.coeffs {
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
        Ok(total)
    }

    /// `A(z) = 1 − P(z)`.
    pub fn eval_a(&self, z: &[f64]) -> Result<f64> {
        Ok(1.0 - self.eval_p(z)?)
    }

    /// Coefficientwise rescale: the model of `z ↦ P(a₁z₁,…,aₙzₙ)`,
    /// i.e. `a_T ↦ a_T · Π_{t∈T} a_t`. Requires every `a_i > 0`.
    pub fn scale(&self, a: &[f64]) -> Result<AffineModel> {
        self.check_len(a)?;
        for (i, &v) in a.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonpositiveScale { index: i, value: v });
            }
        }
        let mut out = self.clone();
        for (t, c) in out.coeffs.iter_mut() {
            let mut bits = t.bits();
            while bits != 0 {
                *c *= a[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
        }
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelRepr {
    n: usize,
    terms: BTreeMap<String, f64>,
}

impl<'de> Deserialize<'de> for AffineModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ModelRepr::deserialize(d)?;
        let mut model = AffineModel::new(repr.n).map_err(D::Error::custom)?;
        for (key, value) in &repr.terms {
            let t = SubsetId::from_label(key).map_err(D::Error::custom)?;
            model.set_coeff(t, *value).map_err(D::Error::custom)?;
        }
        Ok(model)
    }
}

impl Serialize for AffineModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: BTreeMap<String, f64> =
            self.terms().map(|(t, c)| (t.to_string(), c)).collect();
        let mut st = s.serialize_struct("AffineModel", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1(a: f64) -> AffineModel {
        AffineModel::new(2)
            .unwrap()
            .with_term(&[1], 1.0)
            .unwrap()
            .with_term(&[2], 1.0)
            .unwrap()
            .with_term(&[1, 2], a)
            .unwrap()
    }

    fn example2() -> AffineModel {
        let mut m = AffineModel::new(3).unwrap();
        for i in 1..=3 {
            m = m.with_term(&[i], 1.0).unwrap();
        }
        m = m.with_term(&[1, 2], 1.0).unwrap();
        m = m.with_term(&[1, 3], 1.0).unwrap();
        m = m.with_term(&[2, 3], 1.0).unwrap();
        m.with_term(&[1, 2, 3], 0.0).unwrap()
    }

    #[test]
    fn eval_a_bivariate_half_point() {
        let m = example1(-0.5);
        let v = m.eval_a(&[0.5, 0.5]).unwrap();
        assert!((v - 0.125).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn eval_a_at_origin_is_one() {
        let m = example2();
        assert_eq!(m.eval_a(&[0.0, 0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn eval_a_trivariate_quarter_point() {
        let m = example2();
        let v = m.eval_a(&[0.25, 0.25, 0.25]).unwrap();
        assert!((v - 0.0625).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn eval_dimension_mismatch() {
        let m = example1(-0.5);
        assert!(matches!(
            m.eval_a(&[0.5]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn scale_coefficientwise() {
        let m = example1(-0.5);
        let s = m.scale(&[0.5, 0.5]).unwrap();
        assert_eq!(s.coeff(SubsetId::from_indices(&[1]).unwrap()), 0.5);
        assert_eq!(s.coeff(SubsetId::from_indices(&[2]).unwrap()), 0.5);
        assert_eq!(s.coeff(SubsetId::from_indices(&[1, 2]).unwrap()), -0.125);

        let s = m.scale(&[0.5, 0.125]).unwrap();
        assert_eq!(s.coeff(SubsetId::from_indices(&[1]).unwrap()), 0.5);
        assert_eq!(s.coeff(SubsetId::from_indices(&[2]).unwrap()), 0.125);
        assert_eq!(s.coeff(SubsetId::from_indices(&[1, 2]).unwrap()), -0.03125);
    }

    #[test]
    fn scale_by_ones_is_identity() {
        let m = example2();
        assert_eq!(m.scale(&[1.0, 1.0, 1.0]).unwrap(), m);
    }

    #[test]
    fn scale_matches_evaluation() {
        let m = example1(-0.5);
        let a = [0.3, 1.7];
        let s = m.scale(&a).unwrap();
        for z in [[0.1, 0.2], [1.0, -0.4], [0.9, 0.9]] {
            let direct = m.eval_a(&[a[0] * z[0], a[1] * z[1]]).unwrap();
            let scaled = s.eval_a(&z).unwrap();
            assert!((direct - scaled).abs() < 1e-14);
        }
    }

    #[test]
    fn scale_rejects_nonpositive() {
        let m = example1(-0.5);
        assert!(matches!(
            m.scale(&[1.0, 0.0]),
            Err(Error::NonpositiveScale { index: 1, .. })
        ));
        assert!(m.scale(&[-1.0, 1.0]).is_err());
    }

    #[test]
    fn partition_counts_match_bell_numbers() {
        // independent oracle: Bell numbers from the Bell triangle
        fn bell(k: usize) -> usize {
            let mut row = vec![1usize];
            for _ in 1..k {
                let mut next = vec![*row.last().unwrap()];
                for v in &row {
                    next.push(next.last().unwrap() + v);
                }
                row = next;
            }
            *row.last().unwrap()
        }
        for card in 1..=6 {
            let t = SubsetId::from_bits((1 << card) - 1);
            let count = partitions_of(t).unwrap().count();
            assert_eq!(count, bell(card), "Bell({card})");
        }
        let t = SubsetId::from_indices(&[1, 2, 3, 4]).unwrap();
        let by_len2 = partitions_of(t).unwrap().filter(|p| p.len() == 2).count();
        assert_eq!(by_len2, 7);
    }

    #[test]
    fn partitions_are_distinct_and_cover() {
        let t = SubsetId::from_indices(&[2, 4, 5, 7]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for p in partitions_of(t).unwrap() {
            let mut union = 0u32;
            for b in p.blocks() {
                assert!(!b.is_empty());
                assert_eq!(union & b.bits(), 0, "blocks overlap");
                union |= b.bits();
            }
            assert_eq!(union, t.bits(), "blocks must cover T");
            let mut canon: Vec<u32> = p.blocks().iter().map(|b| b.bits()).collect();
            canon.sort_unstable();
            assert!(seen.insert(canon), "duplicate partition");
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn partition_guard() {
        let t = SubsetId::from_bits((1 << 13) - 1);
        assert!(matches!(partitions_of(t), Err(Error::PartitionGuard(13))));
        assert!(matches!(
            partitions_of(SubsetId::from_bits(0)),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = example1(-0.5);
        let text = m.to_json_string();
        let back = AffineModel::from_json_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_parses_documented_form() {
        let m =
            AffineModel::from_json_str(r#"{"n": 2, "terms": {"1": 1.0, "2": 1.0, "1,2": -0.5}}"#)
                .unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.coeff(SubsetId::from_indices(&[1, 2]).unwrap()), -0.5);
    }

    #[test]
    fn json_rejects_bad_keys() {
        for text in [
            r#"{"n": 2, "terms": {"": 1.0}}"#,
            r#"{"n": 2, "terms": {"2,1": 1.0}}"#,
            r#"{"n": 2, "terms": {"1,1": 1.0}}"#,
            r#"{"n": 2, "terms": {"0": 1.0}}"#,
            r#"{"n": 2, "terms": {"3": 1.0}}"#,
            r#"{"n": 2, "terms": {"a": 1.0}}"#,
            r#"{"n": 2, "terms": {"1": 1.0}, "extra": 3}"#,
            r#"{"n": 0, "terms": {}}"#,
        ] {
            assert!(AffineModel::from_json_str(text).is_err(), "accepted {text}");
        }
    }

    #[test]
    fn subset_labels() {
        let t = SubsetId::from_indices(&[1, 3, 4]).unwrap();
        assert_eq!(t.to_string(), "1,3,4");
        assert_eq!(SubsetId::from_label("1,3,4").unwrap(), t);
        assert_eq!(t.cardinality(), 3);
        assert!(t.contains(3));
        assert!(!t.contains(2));
    }
}
