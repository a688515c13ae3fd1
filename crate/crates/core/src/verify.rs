//! Relation residuals, m-th powers, family classification, irreducibility
//! and hermiticity.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{Direction, GeneratorSet, RepModule, Variant};
use crate::error::{Error, Result};
use crate::patterns::Eta;
use crate::sparse::SparseOperator;

pub const DEFAULT_IRREDUCIBILITY_BOUND: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationFamily {
    /// `k_i k_i^{-1} = 1` and `k_i k_j = k_j k_i`.
    Cartan,
    /// `k_i e_j k_i^{-1} = q^{a_ij} e_j`.
    CartanRaise,
    /// `k_i f_j k_i^{-1} = q^{-a_ij} f_j`.
    CartanLower,
    /// `[e_i, f_j] = delta_ij (k_i - k_i^{-1}) / (q - q^{-1})`.
    RaiseLower,
    /// `[e_i, e_j] = [f_i, f_j] = 0` for `|i - j| > 1`.
    Distant,
    /// Quantum Serre relations for `|i - j| = 1`.
    Serre,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub family: RelationFamily,
    pub label: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationResiduals {
    pub instances: Vec<RelationResidual>,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.instances.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn by_family(&self) -> BTreeMap<RelationFamily, f64> {
        let mut out = BTreeMap::new();
        for r in &self.instances {
            let e = out.entry(r.family).or_insert(0.0f64);
            *e = e.max(r.residual);
        }
        out
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.instances.iter().find(|r| r.label == label).map(|r| r.residual)
    }
}

fn cartan_entry(i: usize, j: usize) -> i32 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Max-entry norm of `lhs - rhs` for every defining relation.
pub fn relation_residuals(ops: &GeneratorSet) -> RelationResiduals {
    let q = ops.q;
    let qinv = q.inv();
    let one = Complex64::new(1.0, 0.0);
    let rank = ops.rank();
    let dim = ops.dim();
    let identity = SparseOperator::identity(dim);
    let qpow = |n: i32| q.powi(n);
    let mut out = RelationResiduals::default();
    let mut push = |family, label: String, op: SparseOperator| {
        out.instances.push(RelationResidual {
            family,
            label,
            residual: op.max_abs(),
        });
    };
    for i in 0..rank {
        let (kp, km) = (&ops.k_plus[i], &ops.k_minus[i]);
        push(RelationFamily::Cartan, format!("k{0} k{0}^-1 = 1", i + 1), &kp.matmul(km) - &identity);
        push(RelationFamily::Cartan, format!("k{0}^-1 k{0} = 1", i + 1), &km.matmul(kp) - &identity);
        for j in 0..rank {
            if i < j {
                push(RelationFamily::Cartan, format!("[k{}, k{}] = 0", i + 1, j + 1), kp.commutator(&ops.k_plus[j]));
            }
            let a = cartan_entry(i, j);
            let e = &ops.e[j];
            let f = &ops.f[j];
            push(
                RelationFamily::CartanRaise,
                format!("k{} e{} k{}^-1 = q^{} e{}", i + 1, j + 1, i + 1, a, j + 1),
                &kp.matmul(e).matmul(km) - &e.scale(qpow(a)),
            );
            push(
                RelationFamily::CartanLower,
                format!("k{} f{} k{}^-1 = q^{} f{}", i + 1, j + 1, i + 1, -a, j + 1),
                &kp.matmul(f).matmul(km) - &f.scale(qpow(-a)),
            );
            let comm = ops.e[i].commutator(f);
            let rhs = if i == j {
                (kp - km).scale((q - qinv).inv())
            } else {
                SparseOperator::zeros(dim)
            };
            push(RelationFamily::RaiseLower, format!("[e{}, f{}]", i + 1, j + 1), &comm - &rhs);
            if i < j && j - i > 1 {
                push(RelationFamily::Distant, format!("[e{}, e{}] = 0", i + 1, j + 1), ops.e[i].commutator(e));
                push(RelationFamily::Distant, format!("[f{}, f{}] = 0", i + 1, j + 1), ops.f[i].commutator(f));
            }
            if i.abs_diff(j) == 1 {
                for (name, x, y) in [("e", &ops.e[i], e), ("f", &ops.f[i], f)] {
                    let xx = x.matmul(x);
                    let serre = SparseOperator::linear_combination(
                        &SparseOperator::linear_combination(&xx.matmul(y), one, &y.matmul(&xx), one),
                        one,
                        &x.matmul(y).matmul(x),
                        -(q + qinv),
                    );
                    push(RelationFamily::Serre, format!("serre {name}{} {name}{}", i + 1, j + 1), serre);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum PowerStatus {
    Zero,
    Scalar([f64; 2]),
    NonScalar,
}

impl PowerStatus {
    pub fn is_zero(&self) -> bool {
        matches!(self, PowerStatus::Zero)
    }

    pub fn scalar(&self) -> Option<Complex64> {
        match self {
            PowerStatus::Scalar([re, im]) => Some(Complex64::new(*re, *im)),
            _ => None,
        }
    }
}

/// Diagnostics of one m-th power `M^m`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerCheck {
    pub status: PowerStatus,
    pub norm: f64,
    /// Off-diagonal max entry divided by `max(1, norm)`.
    pub off_diagonal: f64,
    /// Standard deviation of the diagonal divided by `max(1, norm)`.
    pub diagonal_spread: f64,
    /// Largest commutator with a generator, divided by `max(1, norm)`.
    pub centrality: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootPower {
    pub i: usize,
    pub j: usize,
    pub e: PowerCheck,
    pub f: PowerCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerReport {
    pub m: u32,
    pub roots: Vec<RootPower>,
    pub k: Vec<PowerCheck>,
}

impl PowerReport {
    pub fn checks(&self) -> impl Iterator<Item = &PowerCheck> {
        self.roots.iter().flat_map(|r| [&r.e, &r.f]).chain(&self.k)
    }

    pub fn max_centrality(&self) -> f64 {
        self.checks().map(|c| c.centrality).fold(0.0, f64::max)
    }
}

fn power_check(power: &SparseOperator, ops: &GeneratorSet, tol: f64) -> PowerCheck {
    let norm = power.max_abs();
    let scale = norm.max(1.0);
    let dim = power.dim();
    let mut off = 0.0f64;
    for (r, c, v) in power.triplets() {
        if r != c {
            off = off.max(v.norm());
        }
    }
    let diag = power.diagonal_values();
    let mean: Complex64 = diag.iter().sum::<Complex64>() / dim.max(1) as f64;
    let spread = (diag.iter().map(|d| (d - mean).norm_sqr()).sum::<f64>() / dim.max(1) as f64).sqrt();
    let centrality = ops
        .all()
        .map(|g| power.commutator(g).max_abs())
        .fold(0.0, f64::max)
        / scale;
    let (off, spread) = (off / scale, spread / scale);
    let status = if norm < tol {
        PowerStatus::Zero
    } else if off < tol && spread < tol {
        PowerStatus::Scalar([mean.re, mean.im])
    } else {
        PowerStatus::NonScalar
    };
    PowerCheck {
        status,
        norm,
        off_diagonal: off,
        diagonal_spread: spread,
        centrality,
    }
}

/// `M^m` for every root vector `e_ij`, `f_ij` and every `k_l`.
pub fn mth_power_report(module: &RepModule) -> Result<PowerReport> {
    let ctx = &module.spec.ctx;
    let m = ctx
        .order()
        .ok_or_else(|| Error::Precondition("m-th powers need a root of unity".into()))?;
    let tol = ctx.relation_tolerance;
    let ops = &module.ops;
    let roots = ops
        .positive_roots()
        .into_iter()
        .map(|(i, j)| {
            let e = ops.root_vector(i, j, Direction::Raise, Variant::Plain).pow(m);
            let f = ops.root_vector(i, j, Direction::Lower, Variant::Plain).pow(m);
            RootPower {
                i,
                j,
                e: power_check(&e, ops, tol),
                f: power_check(&f, ops, tol),
            }
        })
        .collect();
    let k = ops.k_plus.iter().map(|k| power_check(&k.pow(m), ops, tol)).collect();
    Ok(PowerReport { m, roots, k })
}

/// States annihilated by every `e_l`.
pub fn highest_weight_states(ops: &GeneratorSet) -> Vec<usize> {
    (0..ops.dim()).filter(|&c| ops.e.iter().all(|e| e.column_is_empty(c))).collect()
}

/// States annihilated by every `f_l`.
pub fn lowest_weight_states(ops: &GeneratorSet) -> Vec<usize> {
    (0..ops.dim()).filter(|&c| ops.f.iter().all(|f| f.column_is_empty(c))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Periodic,
    SemiPeriodicHw,
    SemiPeriodicLw,
    Mixed,
    Nilpotent,
    Usual,
    PartiallyPeriodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    NotTested,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub relation_residual_max: f64,
    pub powers: Option<PowerReport>,
    pub highest_weight: Option<usize>,
    pub lowest_weight: Option<usize>,
    pub family: Family,
    pub irreducible: Irreducibility,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub irreducibility_bound: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            irreducibility_bound: DEFAULT_IRREDUCIBILITY_BOUND,
            seed: 0,
        }
    }
}

/// Scale for relative comparisons: relations are at most cubic in the
/// generators.
fn relation_scale(ops: &GeneratorSet) -> f64 {
    ops.all().map(SparseOperator::max_abs).fold(1.0, f64::max).powi(3)
}

pub fn classify(module: &RepModule, options: ClassifyOptions) -> Result<ClassificationReport> {
    let ops = &module.ops;
    let ctx = &module.spec.ctx;
    let residuals = relation_residuals(ops);
    let relation_residual_max = residuals.max();
    if relation_residual_max > ctx.relation_tolerance * relation_scale(ops) {
        return Err(Error::RelationViolation(format!(
            "largest relation residual {relation_residual_max:e} exceeds tolerance"
        )));
    }
    let highest_weight = highest_weight_states(ops).first().copied();
    let lowest_weight = lowest_weight_states(ops).first().copied();
    let powers = if ctx.is_root_of_unity() {
        Some(mth_power_report(module)?)
    } else {
        None
    };
    let family = match &powers {
        None => {
            if highest_weight.is_some() && lowest_weight.is_some() {
                Family::Usual
            } else {
                Family::Mixed
            }
        }
        Some(report) => {
            let e_zero: Vec<bool> = report.roots.iter().map(|r| r.e.status.is_zero()).collect();
            let f_zero: Vec<bool> = report.roots.iter().map(|r| r.f.status.is_zero()).collect();
            let all = |v: &[bool], x: bool| v.iter().all(|&b| b == x);
            if all(&e_zero, true) && all(&f_zero, true) {
                if module.spec.is_integer_pattern() {
                    Family::Usual
                } else {
                    Family::Nilpotent
                }
            } else if all(&e_zero, true) && all(&f_zero, false) && highest_weight.is_some() {
                Family::SemiPeriodicHw
            } else if all(&f_zero, true) && all(&e_zero, false) && lowest_weight.is_some() {
                Family::SemiPeriodicLw
            } else if all(&e_zero, false) && all(&f_zero, false) {
                Family::Periodic
            } else if e_zero.iter().zip(&f_zero).any(|(&e, &f)| !e && !f) {
                Family::PartiallyPeriodic
            } else {
                Family::Mixed
            }
        }
    };
    let irreducible = irreducibility(ops, options.irreducibility_bound, options.seed);
    if irreducible == Irreducibility::Irreducible {
        if let Some(report) = &powers {
            if report.checks().any(|c| c.status == PowerStatus::NonScalar) {
                return Err(Error::InconsistentStatus(
                    "a central m-th power is not scalar on an irreducible module".into(),
                ));
            }
        }
    }
    Ok(ClassificationReport {
        relation_residual_max,
        powers,
        highest_weight,
        lowest_weight,
        family,
        irreducible,
    })
}

fn dense_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn dense_norm(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `G X` for sparse `G` and dense row-major `X`.
fn sparse_times_dense(g: &SparseOperator, x: &[Complex64]) -> Vec<Complex64> {
    let d = g.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for r in 0..d {
        for &(k, v) in g.row(r) {
            let src = &x[k * d..(k + 1) * d];
            for (o, s) in out[r * d..(r + 1) * d].iter_mut().zip(src) {
                *o += v * s;
            }
        }
    }
    out
}

/// Randomized Burnside test: grow the span of the algebra generated by the
/// operators by left-multiplying random span elements with random generator
/// combinations. Full rank `dim^2` means the module is irreducible.
pub fn irreducibility(ops: &GeneratorSet, bound: usize, seed: u64) -> Irreducibility {
    let d = ops.dim();
    if d > bound {
        return Irreducibility::NotTested;
    }
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_complex = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let generators: Vec<&SparseOperator> = ops.k_plus.iter().chain(&ops.e).chain(&ops.f).collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let identity = SparseOperator::identity(d).to_dense();
    let norm = dense_norm(&identity);
    basis.push(identity.iter().map(|v| v / norm).collect());
    let target = d * d;
    let mut misses = 0;
    while basis.len() < target && misses < 3 {
        let mut combination = SparseOperator::zeros(d);
        for g in &generators {
            let w = random_complex(&mut rng);
            combination = SparseOperator::linear_combination(&combination, Complex64::new(1.0, 0.0), g, w);
        }
        let mut x = vec![Complex64::new(0.0, 0.0); d * d];
        for b in &basis {
            let w = random_complex(&mut rng);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += w * bi;
            }
        }
        let mut y = sparse_times_dense(&combination, &x);
        let before = dense_norm(&y);
        if before == 0.0 {
            misses += 1;
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let overlap = dense_dot(b, &y);
                for (yi, bi) in y.iter_mut().zip(b) {
                    *yi -= overlap * bi;
                }
            }
        }
        let after = dense_norm(&y);
        if after > 1e-9 * before {
            basis.push(y.iter().map(|v| v / after).collect());
            misses = 0;
        } else {
            misses += 1;
        }
    }
    if basis.len() == target {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible
    }
}

/// `max_l max(|e_l - f_l^dagger|, |k_l k_l^dagger - 1|)`.
pub fn hermiticity_check(module: &RepModule) -> Result<f64> {
    let spec = &module.spec;
    if spec.classes.iter().any(|c| c.base.im != 0.0) {
        return Err(Error::Precondition("hermiticity needs real class bases".into()));
    }
    if !spec.eta.all(Eta::Half) {
        return Err(Error::Precondition("hermiticity needs all eta = 1/2".into()));
    }
    if spec.c.rows().iter().flatten().any(|c| (c.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::Precondition("hermiticity needs |c_jl| = 1".into()));
    }
    let identity = SparseOperator::identity(module.dim());
    let mut deviation = 0.0f64;
    for l in 1..module.n() {
        deviation = deviation.max((module.e(l) - &module.f(l).adjoint()).max_abs());
        let k = module.k_plus(l);
        deviation = deviation.max((&k.matmul(&k.adjoint()) - &identity).max_abs());
    }
    Ok(deviation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::build_module;
    use crate::families;

    #[test]
    fn triplet_relations_and_hermiticity() {
        let module = build_module(&families::usual(&[1, -2], 0.7).unwrap()).unwrap();
        assert!(relation_residuals(&module.ops).max() < 1e-12);
        assert!(hermiticity_check(&module).unwrap() < 1e-12);
        assert_eq!(highest_weight_states(&module.ops).len(), 1);
        assert_eq!(lowest_weight_states(&module.ops).len(), 1);
    }

    #[test]
    fn distinct_simple_roots_commute_on_sl3() {
        let module = build_module(&families::generic_periodic(3, 3, 7).unwrap()).unwrap();
        let residuals = relation_residuals(&module.ops);
        assert!(residuals.get("[e1, f2]").unwrap() < 1e-9);
        assert!(residuals.get("serre e1 e2").unwrap() < 1e-9);
        assert!(residuals.max() < 1e-9, "{:?}", residuals.by_family());
    }

    #[test]
    fn periodic_triplet_is_irreducible_and_doubling_is_not() {
        let module = build_module(&families::generic_periodic(2, 3, 1).unwrap()).unwrap();
        assert_eq!(irreducibility(&module.ops, 32, 0), Irreducibility::Irreducible);
        let doubled = module.ops.direct_sum(&module.ops);
        assert_eq!(irreducibility(&doubled, 32, 0), Irreducibility::Reducible);
        assert_eq!(irreducibility(&module.ops, 2, 0), Irreducibility::NotTested);
    }

    #[test]
    fn periodic_family() {
        let module = build_module(&families::generic_periodic(2, 3, 4).unwrap()).unwrap();
        let report = classify(&module, ClassifyOptions::default()).unwrap();
        assert_eq!(report.family, Family::Periodic);
        assert_eq!(report.highest_weight, None);
        assert_eq!(report.lowest_weight, None);
        assert_eq!(report.irreducible, Irreducibility::Irreducible);
    }

    #[test]
    fn eta_one_breaks_hermiticity_precondition() {
        let module = build_module(&families::semi_periodic(2, 3, 2).unwrap()).unwrap();
        assert!(matches!(hermiticity_check(&module), Err(Error::Precondition(_))));
    }
}
