//! Supplementary Cartan weights, Casimir eigenvalues on highest weights, and
//! the polynomials expressing `e_i(x_1^m, ..., x_N^m)` through the
//! elementary symmetric functions of the `x_j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::action::RepModule;
use crate::error::{Error, Result};
use crate::sparse::SparseOperator;
use crate::verify::{highest_weight_states, mth_power_report};

/// A polynomial in `c_1, ..., c_n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coefficient: i128) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector has the wrong length");
        let entry = self.terms.entry(exponents).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> i128 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Terms in descending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().rev().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.nvars, "wrong number of values");
        self.terms()
            .map(|(exps, c)| {
                exps.iter()
                    .zip(values)
                    .fold(Complex64::new(c as f64, 0.0), |acc, (&k, v)| acc * v.powu(k))
            })
            .sum()
    }

    /// Evaluate a one-variable polynomial at an operator.
    pub fn eval_operator(&self, x: &SparseOperator) -> SparseOperator {
        assert_eq!(self.nvars, 1, "operator evaluation needs one variable");
        let one = Complex64::new(1.0, 0.0);
        let mut out = SparseOperator::zeros(x.dim());
        for (exps, c) in self.terms() {
            out = SparseOperator::linear_combination(&out, one, &x.pow(exps[0]), Complex64::new(c as f64, 0.0));
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.terms().enumerate() {
            let monomial: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("c{}", v + 1) } else { format!("c{}^{e}", v + 1) })
                .collect();
            let magnitude = c.unsigned_abs();
            let body = match (monomial.is_empty(), magnitude) {
                (true, _) => magnitude.to_string(),
                (false, 1) => monomial.join("*"),
                (false, _) => format!("{magnitude}*{}", monomial.join("*")),
            };
            match (k, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

type Partition = Vec<u32>;

/// A symmetric polynomial in `n` variables in the monomial symmetric basis.
type MonomialSym = BTreeMap<Partition, i128>;

fn normalize(mut v: Vec<u32>) -> Partition {
    v.sort_unstable_by(|a, b| b.cmp(a));
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(n - 1, k - 1)
        .into_iter()
        .map(|mut s| {
            s.push(n - 1);
            s
        })
        .collect();
    out.extend(subsets(n - 1, k));
    out
}

fn padded(p: &Partition, n: usize) -> Vec<u32> {
    let mut v = p.clone();
    v.resize(n, 0);
    v
}

/// `f * e_k` in `n` variables.
fn times_elementary(f: &MonomialSym, k: usize, n: usize) -> MonomialSym {
    let sets = subsets(n, k);
    let candidates: BTreeSet<Partition> = f
        .keys()
        .flat_map(|p| {
            let base = padded(p, n);
            sets.iter().map(move |s| {
                let mut v = base.clone();
                for &i in s {
                    v[i] += 1;
                }
                normalize(v)
            })
        })
        .collect();
    let mut out = MonomialSym::new();
    for mu in candidates {
        // coefficient of x^mu: sum over |S| = k of [x^{mu - 1_S}] f
        let v = padded(&mu, n);
        let mut total = 0i128;
        for s in &sets {
            if s.iter().all(|&i| v[i] > 0) {
                let mut w = v.clone();
                for &i in s {
                    w[i] -= 1;
                }
                total += f.get(&normalize(w)).copied().unwrap_or(0);
            }
        }
        if total != 0 {
            out.insert(mu, total);
        }
    }
    out
}

fn elementary_product(exponents: &[u32], n: usize) -> MonomialSym {
    let mut f = MonomialSym::from([(Vec::new(), 1i128)]);
    for (k, &a) in exponents.iter().enumerate() {
        for _ in 0..a {
            f = times_elementary(&f, k + 1, n);
        }
    }
    f
}

/// `P_{i,m}^{(N)}`: the polynomial with
/// `P(e_1(x), ..., e_{N-1}(x)) = e_i(x_1^m, ..., x_N^m)` whenever
/// `x_1 ... x_N = 1`, by leading-term elimination.
pub fn compute_p(i: usize, m: u32, n: usize) -> Result<SymPoly> {
    if n < 2 || i == 0 || i >= n || m == 0 {
        return Err(Error::InvalidParams(format!(
            "need N >= 2, 1 <= i <= N-1 and m >= 1, got i={i}, m={m}, N={n}"
        )));
    }
    let mut remainder = MonomialSym::from([(vec![m; i], 1i128)]);
    let mut result = SymPoly::zero(n - 1);
    while let Some((lead, &coefficient)) = remainder.iter().next_back() {
        let lead = padded(lead, n);
        // lead = sum_k a_k (1^k): a_k = lead_k - lead_{k+1}
        let exponents: Vec<u32> = (0..n)
            .map(|k| lead[k] - if k + 1 < n { lead[k + 1] } else { 0 })
            .collect();
        for (p, c) in elementary_product(&exponents, n) {
            let entry = remainder.entry(p).or_insert(0);
            *entry -= coefficient * c;
        }
        remainder.retain(|_, c| *c != 0);
        result.add_term(exponents[..n - 1].to_vec(), coefficient);
    }
    Ok(result)
}

/// `e_k(x_1, ..., x_n)` for `k = 0..=n`.
pub fn elementary_symmetric(x: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); x.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (count, &v) in x.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            let prev = e[k - 1];
            e[k] += v * prev;
        }
    }
    e
}

/// Exponents `w_l` of the supplementary Cartan generators,
/// `k_{eps_l} |p> = q^{w_l(p)} |p>`, for every state.
#[derive(Clone, Debug)]
pub struct EpsilonWeights {
    pub weights: Vec<Vec<Complex64>>,
}

fn weights_of(module: &RepModule, state: usize) -> Vec<Complex64> {
    let spec = &module.spec;
    let n = spec.n;
    let p = &module.states[state];
    let row_sum = |l: usize| -> Complex64 {
        if l == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            p.row(l).iter().map(|&v| spec.value(v)).sum()
        }
    };
    let s = -(row_sum(n) + (n * (n + 1) / 2) as f64) / n as f64;
    (1..=n).map(|l| row_sum(l) - row_sum(l - 1) + l as f64 + s).collect()
}

/// `w_l(p) = sum_{i<=l} p_il - sum_{i<=l-1} p_{i,l-1} + l + s`, with `s`
/// fixed by `sum_l w_l = 0`. Verifies `k_{eps_i} e_j k_{eps_i}^{-1} =
/// q^{delta_ij - delta_{i-1,j}} e_j` (and the inverse power for `f_j`).
pub fn epsilon_weights(module: &RepModule) -> Result<EpsilonWeights> {
    let ctx = &module.spec.ctx;
    let n = module.n();
    let weights: Vec<Vec<Complex64>> = (0..module.dim()).map(|s| weights_of(module, s)).collect();
    let tol = ctx.relation_tolerance;
    for i in 1..=n {
        for j in 1..n {
            let shift = i64::from(i == j) - i64::from(i == j + 1);
            for (op, sign) in [(module.e(j), 1i64), (module.f(j), -1i64)] {
                let expected = ctx.qpow_int(sign * shift);
                for (r, c, v) in op.triplets() {
                    let actual = ctx.qpow(weights[r][i - 1] - weights[c][i - 1]);
                    let residual = (actual - expected).norm() * v.norm();
                    if residual > tol * v.norm().max(1.0) {
                        return Err(Error::RelationViolation(format!(
                            "k_eps{i} conjugation of generator {j} is off by {residual:e}"
                        )));
                    }
                }
            }
        }
    }
    Ok(EpsilonWeights { weights })
}

/// `C_i = e_i(q^{N+1-2j} kappa_j)` with `kappa_j = q^{2 w_j}` on the
/// highest-weight state.
pub fn hc_eigenvalues(module: &RepModule) -> Result<Vec<Complex64>> {
    let hw = *highest_weight_states(&module.ops).first().ok_or(Error::NoHighestWeight)?;
    let ctx = &module.spec.ctx;
    let n = module.n();
    let w = weights_of(module, hw);
    let twisted: Vec<Complex64> = (1..=n)
        .map(|j| ctx.qpow_int(n as i64 + 1 - 2 * j as i64) * ctx.qpow(w[j - 1] * 2.0))
        .collect();
    Ok(elementary_symmetric(&twisted)[1..n].to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2CentreReport {
    /// Largest commutator of the Casimir with `e`, `f`, `k`.
    pub commutator_residual: f64,
    /// `P_{1,m}(C) - (lambda^m f^m)(lambda^m e^m) - k^m - k^{-m}`.
    pub polynomial_residual: f64,
}

impl Sl2CentreReport {
    pub fn max(&self) -> f64 {
        self.commutator_residual.max(self.polynomial_residual)
    }
}

/// The Casimir `C = (lambda f)(lambda e) + q k + q^{-1} k^{-1}`.
pub fn sl2_casimir(module: &RepModule) -> Result<SparseOperator> {
    if module.n() != 2 {
        return Err(Error::Precondition("the sl(2) Casimir needs N = 2".into()));
    }
    let ctx = &module.spec.ctx;
    let lambda = ctx.lambda();
    let q = ctx.q();
    let fe = module.f(1).matmul(module.e(1)).scale(lambda * lambda);
    let cartan = SparseOperator::linear_combination(module.k_plus(1), q, module.k_minus(1), q.inv());
    Ok(&fe + &cartan)
}

pub fn sl2_centre_check(module: &RepModule) -> Result<Sl2CentreReport> {
    let ctx = &module.spec.ctx;
    let m = ctx
        .order()
        .ok_or_else(|| Error::Precondition("centre relations need a root of unity".into()))?;
    let casimir = sl2_casimir(module)?;
    let commutator_residual = module
        .ops
        .all()
        .map(|g| casimir.commutator(g).max_abs())
        .fold(0.0, f64::max);
    let lhs = compute_p(1, m, 2)?.eval_operator(&casimir);
    let lambda_m = ctx.lambda().powu(m);
    let fm = module.f(1).pow(m).scale(lambda_m);
    let em = module.e(1).pow(m).scale(lambda_m);
    let one = Complex64::new(1.0, 0.0);
    let rhs = &fm.matmul(&em)
        + &SparseOperator::linear_combination(&module.k_plus(1).pow(m), one, &module.k_minus(1).pow(m), one);
    Ok(Sl2CentreReport {
        commutator_residual,
        polynomial_residual: (&lhs - &rhs).max_abs(),
    })
}

/// `|P_{i,m}(C_1, ..., C_{N-1}) - e_i(kappa_1^m, ..., kappa_N^m)|` for each
/// `i`, on a module where every `e_alpha^m` and `f_alpha^m` vanishes.
pub fn nilpotent_centre_check(module: &RepModule) -> Result<Vec<f64>> {
    let ctx = &module.spec.ctx;
    let m = ctx
        .order()
        .ok_or_else(|| Error::Precondition("centre relations need a root of unity".into()))?;
    let powers = mth_power_report(module)?;
    if !powers.roots.iter().all(|r| r.e.status.is_zero() && r.f.status.is_zero()) {
        return Err(Error::Precondition("the module is not nilpotent".into()));
    }
    let n = module.n();
    let casimirs = hc_eigenvalues(module)?;
    let hw = highest_weight_states(&module.ops)[0];
    let w = weights_of(module, hw);
    let kappa_m: Vec<Complex64> = w.iter().map(|&wj| ctx.qpow(wj * 2.0).powu(m)).collect();
    let rhs = elementary_symmetric(&kappa_m);
    (1..n)
        .map(|i| Ok((compute_p(i, m, n)?.eval(&casimirs) - rhs[i]).norm()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::build_module;
    use crate::families;
    use proptest::prelude::*;

    #[test]
    fn chebyshev_cases() {
        assert_eq!(compute_p(1, 3, 2).unwrap().to_string(), "c1^3 - 3*c1");
        assert_eq!(compute_p(1, 5, 2).unwrap().to_string(), "c1^5 - 5*c1^3 + 5*c1");
        for n in 2..=5 {
            for i in 1..n {
                let mut exps = vec![0; n - 1];
                exps[i - 1] = 1;
                let p = compute_p(i, 1, n).unwrap();
                assert_eq!(p.terms().count(), 1);
                assert_eq!(p.coefficient(&exps), 1);
            }
        }
    }

    #[test]
    fn sl3_cube() {
        // e_1(x^3) = e_1^3 - 3 e_1 e_2 + 3 e_3 with e_3 = 1
        let p = compute_p(1, 3, 3).unwrap();
        assert_eq!(p.to_string(), "c1^3 - 3*c1*c2 + 3");
    }

    #[test]
    fn invalid_parameters() {
        assert!(compute_p(0, 3, 3).is_err());
        assert!(compute_p(3, 3, 3).is_err());
    }

    #[test]
    fn triplet_weights_and_casimir() {
        let module = build_module(&families::usual(&[1, -2], 0.7).unwrap()).unwrap();
        let weights = epsilon_weights(&module).unwrap();
        let mut pairs: Vec<(f64, f64)> = weights.weights.iter().map(|w| (w[0].re, w[1].re)).collect();
        pairs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(pairs, vec![(1.0, -1.0), (0.0, 0.0), (-1.0, 1.0)]);
        let q = module.spec.ctx.q();
        let c1 = hc_eigenvalues(&module).unwrap()[0];
        assert!((c1 - (q.powi(3) + q.powi(-3))).norm() < 1e-12);
        let casimir = sl2_casimir(&module).unwrap();
        let hw = highest_weight_states(&module.ops)[0];
        assert!((casimir.get(hw, hw) - c1).norm() < 1e-10);
    }

    #[test]
    fn newton_oracle_small() {
        // e_2(x^2) for N = 3 with e_3 = 1: e_2^2 - 2 e_1 e_3 = c2^2 - 2 c1
        assert_eq!(compute_p(2, 2, 3).unwrap().to_string(), "-2*c1 + c2^2");
    }

    proptest! {
        #[test]
        fn identity_at_random_points(
            n in 2usize..=4,
            m in prop::sample::select(vec![1u32, 3, 5]),
            raw in prop::collection::vec((0.5..1.5f64, -3.0..3.0f64), 4),
        ) {
            let mut x: Vec<Complex64> = raw[..n - 1].iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
            let prod: Complex64 = x.iter().product();
            x.push(prod.inv());
            let e = elementary_symmetric(&x);
            let xm: Vec<Complex64> = x.iter().map(|v| v.powu(m)).collect();
            let em = elementary_symmetric(&xm);
            for (i, rhs) in em.iter().enumerate().take(n).skip(1) {
                let lhs = compute_p(i, m, n).unwrap().eval(&e[1..n]);
                prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
            }
        }
    }
}
