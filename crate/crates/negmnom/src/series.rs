//! Truncated multivariate power series and the `(1−P)^{−λ}` expansion.
//!
//! Series live on ℕⁿ truncated at a total-degree cap `D` and are stored
//! densely by total-degree layers; within a layer, multi-indices are ordered
//! lexicographically with the first coordinate dominant, so overall iteration
//! is graded lexicographic. The expansion route is log-then-exp on truncated
//! series, with both transcendental maps driven by the Euler operator
//! `Θ = Σ zᵢ∂ᵢ` layer recurrences.

use crate::domain::{ps_poly, DirectionVector};
use crate::subsetpoly::{AffineModel, SubsetId};
use crate::{Error, Result};

/// Exponent vector `α ∈ ℕⁿ` (one entry per variable).
pub type MultiIndex = Vec<u32>;

/// Dimension guard for dense layer storage.
pub const MAX_SERIES_DIMENSION: usize = 12;

/// Cap on the number of stored coefficients; guards the combinatorial
/// blow-up of `C(n+D, n)` instead of capping `D` alone, so low-dimensional
/// series may run to the high degrees the tail-mass bounds need.
pub const MAX_COEFFICIENTS: u64 = 4_000_000;

// --- layer combinatorics -------------------------------------------------

/// `comp[k][m]` = number of compositions of `m` into `k` nonnegative parts,
/// i.e. `C(m+k−1, k−1)`.
fn comp_table(n: usize, cap: usize) -> Vec<Vec<u64>> {
    let mut comp = vec![vec![0u64; cap + 1]; n + 1];
    comp[0][0] = 1;
    for k in 1..=n {
        comp[k][0] = 1;
        for m in 1..=cap {
            let up = comp[k - 1][m];
            comp[k][m] = comp[k][m - 1].saturating_add(up);
        }
    }
    comp
}

/// Multi-indices of total degree `total` in `parts` variables, ordered
/// lexicographically descending (first coordinate largest first).
fn layer_indices(total: u32, parts: usize) -> Vec<MultiIndex> {
    fn rec(cur: &mut MultiIndex, pos: usize, rem: u32, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        let mut v = rem + 1;
        while v > 0 {
            v -= 1;
            cur[pos] = v;
            rec(cur, pos + 1, rem - v, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    rec(&mut cur, 0, total, &mut out);
    out
}

/// Rank of `α` within its layer, matching the [`layer_indices`] order.
fn layer_rank(alpha: &[u32], comp: &[Vec<u64>]) -> usize {
    let k = alpha.len();
    let mut rem: u32 = alpha.iter().sum();
    let mut rank = 0u64;
    for (i, &a) in alpha.iter().enumerate() {
        if a < rem {
            rank += comp[k - i][(rem - a - 1) as usize];
        }
        rem -= a;
    }
    rank as usize
}

/// Rank of `α + β` within its layer, without materializing the sum.
fn layer_rank_sum(alpha: &[u32], beta: &[u32], comp: &[Vec<u64>]) -> usize {
    let k = alpha.len();
    let mut rem: u32 = alpha.iter().zip(beta).map(|(a, b)| a + b).sum();
    let mut rank = 0u64;
    for i in 0..k {
        let v = alpha[i] + beta[i];
        if v < rem {
            rank += comp[k - i][(rem - v - 1) as usize];
        }
        rem -= v;
    }
    rank as usize
}

/// `out[rank(α+β)] += weight · a[α] · b[β]` over one pair of layers.
fn conv_layer_into(
    out: &mut [f64],
    a_idx: &[MultiIndex],
    a: &[f64],
    b_idx: &[MultiIndex],
    b: &[f64],
    weight: f64,
    comp: &[Vec<u64>],
) {
    for (ia, &ca) in a.iter().enumerate() {
        if ca == 0.0 {
            continue;
        }
        let wa = weight * ca;
        let alpha = &a_idx[ia];
        for (ib, &cb) in b.iter().enumerate() {
            if cb == 0.0 {
                continue;
            }
            out[layer_rank_sum(alpha, &b_idx[ib], comp)] += wa * cb;
        }
    }
}

// --- the series type ------------------------------------------------------

/// A real power series on ℕⁿ truncated at total degree `cap`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    n: usize,
    cap: usize,
    layers: Vec<Vec<f64>>,
    comp: Vec<Vec<u64>>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, cap: usize) -> Result<Self> {
        if n == 0 || n > MAX_SERIES_DIMENSION {
            return Err(Error::DimensionGuard(n));
        }
        let comp = comp_table(n, cap);
        let total: u64 = (0..=cap).map(|d| comp[n][d]).fold(0u64, u64::saturating_add);
        if total > MAX_COEFFICIENTS {
            return Err(Error::SeriesTooLarge {
                coefficients: total,
                limit: MAX_COEFFICIENTS,
            });
        }
        let layers = (0..=cap).map(|d| vec![0.0; comp[n][d] as usize]).collect();
        Ok(TruncatedSeries { n, cap, layers, comp })
    }

    pub fn one(n: usize, cap: usize) -> Result<Self> {
        let mut s = Self::zero(n, cap)?;
        s.layers[0][0] = 1.0;
        Ok(s)
    }

    /// Builds a series by evaluating `f` on every stored multi-index, in
    /// graded lexicographic order.
    pub fn from_fn(n: usize, cap: usize, mut f: impl FnMut(&[u32]) -> f64) -> Result<Self> {
        let mut s = Self::zero(n, cap)?;
        for (d, layer) in s.layers.iter_mut().enumerate() {
            for (r, alpha) in layer_indices(d as u32, n).iter().enumerate() {
                layer[r] = f(alpha);
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn constant_term(&self) -> f64 {
        self.layers[0][0]
    }

    /// Coefficient of `z^α`; indices beyond the cap read as 0.
    pub fn coeff(&self, alpha: &[u32]) -> f64 {
        assert_eq!(alpha.len(), self.n, "multi-index length mismatch");
        let d: u32 = alpha.iter().sum();
        if d as usize > self.cap {
            return 0.0;
        }
        self.layers[d as usize][layer_rank(alpha, &self.comp)]
    }

    /// All stored `(α, c_α)` in graded lexicographic order.
    pub fn coefficients(&self) -> impl Iterator<Item = (MultiIndex, f64)> + '_ {
        (0..=self.cap).flat_map(move |d| {
            layer_indices(d as u32, self.n)
                .into_iter()
                .zip(self.layers[d].iter().copied())
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.layers
            .iter()
            .flatten()
            .fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Coefficientwise multiple.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for layer in &mut out.layers {
            for c in layer {
                *c *= factor;
            }
        }
        out
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.cap != other.cap {
            return Err(Error::ShapeMismatch {
                n_left: self.n,
                cap_left: self.cap,
                n_right: other.n,
                cap_right: other.cap,
            });
        }
        Ok(())
    }

    fn indices_per_layer(&self) -> Vec<Vec<MultiIndex>> {
        (0..=self.cap)
            .map(|d| layer_indices(d as u32, self.n))
            .collect()
    }

    /// Cauchy product truncated at the common cap.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.n, self.cap)?;
        let idx = self.indices_per_layer();
        for da in 0..=self.cap {
            for db in 0..=(self.cap - da) {
                let (head, tail) = out.layers.split_at_mut(da + db);
                let _ = head;
                conv_layer_into(
                    &mut tail[0],
                    &idx[da],
                    &self.layers[da],
                    &idx[db],
                    &other.layers[db],
                    1.0,
                    &self.comp,
                );
            }
        }
        Ok(out)
    }

    /// Formal logarithm; requires the constant term to equal 1.
    ///
    /// Layer recurrence from `s · ΘL = Θs`:
    /// `L_d = s_d − (1/d) Σ_{e=1}^{d−1} (d−e) · s_e ⊛ L_{d−e}` (unit constant).
    pub fn log(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if (c0 - 1.0).abs() > 1e-12 {
            return Err(Error::ConstantTermNotOne(c0));
        }
        let mut out = Self::zero(self.n, self.cap)?;
        out.layers[0][0] = c0.ln();
        let idx = self.indices_per_layer();
        for d in 1..=self.cap {
            let mut acc: Vec<f64> = self.layers[d].iter().map(|&c| c * d as f64).collect();
            for e in 1..d {
                conv_layer_into(
                    &mut acc,
                    &idx[e],
                    &self.layers[e],
                    &idx[d - e],
                    &out.layers[d - e],
                    -((d - e) as f64),
                    &self.comp,
                );
            }
            let inv = 1.0 / (d as f64 * c0);
            out.layers[d] = acc.into_iter().map(|v| v * inv).collect();
        }
        Ok(out)
    }

    /// Formal exponential; requires a zero constant term.
    ///
    /// Layer recurrence from `Θf = (Θg) · f`:
    /// `f_d = (1/d) Σ_{e=1}^{d} e · g_e ⊛ f_{d−e}`.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.abs() > 1e-12 {
            return Err(Error::ConstantTermNotZero(c0));
        }
        let mut out = Self::zero(self.n, self.cap)?;
        out.layers[0][0] = c0.exp();
        let idx = self.indices_per_layer();
        for d in 1..=self.cap {
            let mut acc = vec![0.0; self.layers[d].len()];
            for e in 1..=d {
                let (done, rest) = out.layers.split_at_mut(d);
                let _ = rest;
                conv_layer_into(
                    &mut acc,
                    &idx[e],
                    &self.layers[e],
                    &idx[d - e],
                    &done[d - e],
                    e as f64,
                    &self.comp,
                );
            }
            let inv = 1.0 / d as f64;
            out.layers[d] = acc.into_iter().map(|v| v * inv).collect();
        }
        Ok(out)
    }
}

/// The kernel `A = 1 − P` of a model, embedded as a truncated series.
pub fn one_minus_p(model: &AffineModel, cap: usize) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::one(model.n(), cap)?;
    for (t, a) in model.terms() {
        let d = t.cardinality();
        if d <= cap {
            let alpha = indicator_of(t, model.n());
            let r = layer_rank(&alpha, &s.comp);
            s.layers[d][r] -= a;
        }
    }
    Ok(s)
}

fn indicator_of(t: SubsetId, n: usize) -> MultiIndex {
    (0..n).map(|i| ((t.bits() >> i) & 1) as u32).collect()
}

/// All coefficients `c_α(λ)` of `(1−P)^{−λ}` with `|α| ≤ cap`,
/// via `exp(−λ · log(1−P))` on truncated series. The constant term is 1.
pub fn expand_neg_power(model: &AffineModel, lambda: f64, cap: usize) -> Result<TruncatedSeries> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonpositiveLambda(lambda));
    }
    one_minus_p(model, cap)?.log()?.scaled(-lambda).exp()
}

/// Rising factorial `⟨λ⟩_k = λ(λ+1)⋯(λ+k−1)`; 1 at `k = 0`.
pub fn rising_factorial(lambda: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (lambda + i as f64))
}

/// Coefficients `u_0..u_{n_max}` of `(q(t))^{−λ}` for a polynomial `q` with
/// `q(0) = 1`, by the power-of-a-series recurrence
/// `m·u_m = Σ_j ((1−λ)j − m) q_j u_{m−j}`.
fn univariate_neg_power(q: &[f64], lambda: f64, n_max: usize) -> Vec<f64> {
    debug_assert!((q[0] - 1.0).abs() <= 1e-12);
    let beta = -lambda;
    let degree = q.len() - 1;
    let mut u = vec![0.0; n_max + 1];
    u[0] = 1.0;
    for m in 1..=n_max {
        let mut acc = 0.0;
        for j in 1..=degree.min(m) {
            acc += ((beta + 1.0) * j as f64 - m as f64) * q[j] * u[m - j];
        }
        u[m] = acc / m as f64;
    }
    u
}

/// Directional coefficients `u_k(λ) = Σ_{|α|=k} c_α(λ) e^{s·α}`, i.e. the
/// univariate expansion of `A(t e^{s₁},…,t e^{sₙ})^{−λ}`, for `s` in the
/// zero-sum hyperplane. Computed by the one-dimensional recurrence on the
/// directional polynomial; collapsing [`expand_neg_power`] must agree.
pub fn directional_coefficients(
    model: &AffineModel,
    s: &DirectionVector,
    lambda: f64,
    n_max: usize,
) -> Result<Vec<f64>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let q = ps_poly(model, s)?;
    Ok(univariate_neg_power(q.coefficients(), lambda, n_max))
}
