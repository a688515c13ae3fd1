//! Generator matrices in the adapted Gelfand-Zetlin basis.
//!
//! Every matrix element is a product of q-brackets coupling two indices.
//! Brackets are evaluated in a canonical orientation so that two brackets
//! with mathematically equal arguments are bit-identical; this keeps the
//! square-root branches of the `e` and `f` matrix elements consistent.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::patterns::{check_admissible, enumerate_states, ClassId, Eta, GzPattern, IndexValue, Pos, RepSpec};
use crate::qcontext::{half_power, QContext};
use crate::sparse::SparseOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `f_l`: `p_jl -> p_jl - 1`.
    Lower,
    /// `e_l`: `p_jl -> p_jl + 1`.
    Raise,
}

impl Direction {
    fn twice_step(self) -> i64 {
        match self {
            Direction::Lower => -2,
            Direction::Raise => 2,
        }
    }
}

/// Which q-coefficient the root-vector recursion uses: `q^{-1}` or `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Tilde,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Factor {
    /// The two coupled indices.
    pub ends: (Pos, Pos),
    pub numerator: bool,
    /// Twice the exponent: 1 for a square root, 2 for a plain factor.
    pub twice_power: u8,
    /// `None` when the bracket vanishes exactly.
    pub value: Option<Complex64>,
}

impl Factor {
    fn powered(&self) -> Option<Complex64> {
        self.value.map(|v| if self.twice_power == 2 { v } else { half_power(v) })
    }
}

fn eps(i: usize, j: usize) -> f64 {
    if i <= j {
        1.0
    } else {
        -1.0
    }
}

/// `[base_a - base_b + twice/2]` in canonical orientation.
fn class_bracket(spec: &RepSpec, a: ClassId, b: ClassId, twice: i64) -> Result<Option<Complex64>> {
    let ctx = &spec.ctx;
    let zero = Complex64::new(0.0, 0.0);
    if a == b {
        if ctx.half_integer_bracket_vanishes(twice) {
            return Ok(None);
        }
        let value = match ctx.order() {
            Some(m) => {
                let period = 2 * i64::from(m);
                let r = twice.rem_euclid(period);
                if r > i64::from(m) {
                    -ctx.qnum_half_shift(zero, period - r)
                } else {
                    ctx.qnum_half_shift(zero, r)
                }
            }
            None if twice < 0 => -ctx.qnum_half_shift(zero, -twice),
            None => ctx.qnum_half_shift(zero, twice),
        };
        return Ok(Some(value));
    }
    if a > b {
        return Ok(class_bracket(spec, b, a, -twice)?.map(|v| -v));
    }
    let delta = spec.classes[a.0].base - spec.classes[b.0].base;
    let value = ctx.qnum_half_shift(delta, twice);
    if value.norm() <= ctx.zero_tolerance {
        return Err(Error::GenericityViolation(format!(
            "[{} - {} + {}/2] = {value}",
            spec.classes[a.0].name, spec.classes[b.0].name, twice
        )));
    }
    Ok(Some(value))
}

/// `sign * [value(a) - value(b) + twice_shift/2]`.
pub(crate) fn bracket(
    spec: &RepSpec,
    a: IndexValue,
    b: IndexValue,
    twice_shift: i64,
    sign: f64,
) -> Result<Option<Complex64>> {
    let twice = a.twice_offset - b.twice_offset + twice_shift;
    Ok(class_bracket(spec, a.class, b.class, twice)?.map(|v| v * sign))
}

/// `q^{base + twice/2}` with `twice` reduced modulo `2m` at a root of unity.
pub(crate) fn qpow_split(ctx: &QContext, base: Complex64, twice: i64) -> Complex64 {
    let twice = match ctx.order() {
        Some(m) => twice.rem_euclid(2 * i64::from(m)),
        None => twice,
    };
    ctx.qpow(base + twice as f64 / 2.0)
}

/// Linear combination `sum_k w_k p_k` of indices, split into the class-base
/// part and twice the half-integer offsets.
pub(crate) fn index_sum(spec: &RepSpec, terms: impl IntoIterator<Item = (IndexValue, i64)>) -> (Complex64, i64) {
    terms.into_iter().fold((Complex64::new(0.0, 0.0), 0), |(base, twice), (v, w)| {
        (
            base + spec.classes[v.class.0].base * w as f64,
            twice + w * v.twice_offset,
        )
    })
}

fn cartan_parts(spec: &RepSpec, l: usize, p: &GzPattern) -> (Complex64, i64) {
    let row = |r: usize| -> Vec<IndexValue> {
        if r == 0 {
            Vec::new()
        } else {
            p.row(r).to_vec()
        }
    };
    let terms = row(l)
        .into_iter()
        .map(|v| (v, 2))
        .chain(row(l + 1).into_iter().map(|v| (v, -1)))
        .chain(row(l - 1).into_iter().map(|v| (v, -1)));
    let (base, twice) = index_sum(spec, terms);
    (base, twice - 2)
}

/// `2 sum_{i<=l} p_il - sum_{i<=l+1} p_{i,l+1} - sum_{i<=l-1} p_{i,l-1} - 1`,
/// so that `k_l |p> = q^{exponent} |p>`.
pub fn cartan_exponent(spec: &RepSpec, l: usize, p: &GzPattern) -> Complex64 {
    let (base, twice) = cartan_parts(spec, l, p);
    base + twice as f64 / 2.0
}

fn factor_survives(spec: &RepSpec, a: Pos, b: Pos) -> bool {
    let survivor = spec.frozen_survivor();
    let ok = |x: Pos, other: Pos| !spec.is_frozen(x) || (Some(x) == survivor && other.l + 1 == x.l);
    ok(a, b) && ok(b, a)
}

/// All bracket factors of the move of `p_jl` in direction `dir`, evaluated
/// at the source pattern `p`. Factors with exponent zero are omitted.
pub(crate) fn step_factors(spec: &RepSpec, p: &GzPattern, dir: Direction, j: usize, l: usize) -> Result<Vec<Factor>> {
    let moving = Pos::new(j, l);
    let pj = p.get(moving);
    let mut out = Vec::new();
    let mut push = |ends: (Pos, Pos), numerator, twice_power: u8, a: IndexValue, b: IndexValue, shift: i64, sign: f64| -> Result<()> {
        if twice_power == 0 || !factor_survives(spec, ends.0, ends.1) {
            return Ok(());
        }
        out.push(Factor {
            ends,
            numerator,
            twice_power,
            value: bracket(spec, a, b, shift, sign)?,
        });
        Ok(())
    };

    for i in 1..=l + 1 {
        let up = Pos::new(i, l + 1);
        let eta = spec.eta.get(i, j, l).twice();
        let (shift, power) = match dir {
            Direction::Lower => (2, 2 - eta),
            Direction::Raise => (0, eta),
        };
        push((up, moving), true, power, p.get(up), pj, shift, eps(i, j))?;
    }
    for i in 1..l {
        let low = Pos::new(i, l - 1);
        let eta = spec.eta.get(j, i, l - 1).twice();
        let (shift, power) = match dir {
            Direction::Lower => (0, eta),
            Direction::Raise => (2, 2 - eta),
        };
        push((moving, low), true, power, pj, p.get(low), shift, eps(j, i))?;
    }
    let shifts: [i64; 2] = match dir {
        Direction::Lower => [0, 2],
        Direction::Raise => [-2, 0],
    };
    for i in (1..=l).filter(|&i| i != j) {
        let other = Pos::new(i, l);
        for shift in shifts {
            push((other, moving), false, 1, p.get(other), pj, shift, eps(i, j))?;
        }
    }
    Ok(out)
}

/// `prod numerator / prod denominator`, or `None` if a numerator factor
/// vanishes exactly.
pub(crate) fn factor_product(factors: &[Factor], what: impl Fn() -> String) -> Result<Option<Complex64>> {
    if factors.iter().any(|f| f.numerator && f.value.is_none()) {
        return Ok(None);
    }
    if factors.iter().any(|f| !f.numerator && f.value.is_none()) {
        return Err(Error::Divergence(what()));
    }
    let mut value = Complex64::new(1.0, 0.0);
    for f in factors {
        let v = f.powered().expect("zero factors handled above");
        if f.numerator {
            value *= v;
        } else {
            value /= v;
        }
    }
    Ok(Some(value))
}

fn move_coefficient(spec: &RepSpec, p: &GzPattern, dir: Direction, j: usize, l: usize) -> Result<Option<Complex64>> {
    let factors = step_factors(spec, p, dir, j, l)?;
    let describe = || {
        format!(
            "zero denominator moving p_{j}{l} {} from {}",
            if dir == Direction::Lower { "down" } else { "up" },
            p.canonical_string(&spec.classes)
        )
    };
    let c = spec.c.get(j, l);
    Ok(factor_product(&factors, describe)?.map(|v| match dir {
        Direction::Lower => c * v,
        Direction::Raise => v / c,
    }))
}

/// The nonzero terms of `f_l |p>` (`Lower`) or `e_l |p>` (`Raise`).
pub fn simple_root_terms(spec: &RepSpec, dir: Direction, l: usize, p: &GzPattern) -> Result<Vec<(GzPattern, Complex64)>> {
    let mut terms = Vec::new();
    for j in 1..=l {
        let pos = Pos::new(j, l);
        if spec.is_frozen(pos) {
            continue;
        }
        if let Some(coefficient) = move_coefficient(spec, p, dir, j, l)? {
            terms.push((spec.canonicalize(p.with_shift(pos, dir.twice_step())), coefficient));
        }
    }
    Ok(terms)
}

/// Patterns reachable from `p` by one simple-root move.
pub fn neighbors(spec: &RepSpec, p: &GzPattern) -> Result<Vec<GzPattern>> {
    let mut out = Vec::new();
    for l in 1..spec.n {
        for dir in [Direction::Lower, Direction::Raise] {
            out.extend(simple_root_terms(spec, dir, l, p)?.into_iter().map(|(t, _)| t));
        }
    }
    Ok(out)
}

/// Represented generators; index `l - 1` holds the operator for `l`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub q: Complex64,
    pub k_plus: Vec<SparseOperator>,
    pub k_minus: Vec<SparseOperator>,
    pub e: Vec<SparseOperator>,
    pub f: Vec<SparseOperator>,
}

impl GeneratorSet {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn dim(&self) -> usize {
        self.e.first().map_or(0, SparseOperator::dim)
    }

    pub fn all(&self) -> impl Iterator<Item = &SparseOperator> {
        self.k_plus.iter().chain(&self.k_minus).chain(&self.e).chain(&self.f)
    }

    /// `e_{ij}` (`Raise`) or `f_{ij}` (`Lower`), `1 <= i < j <= N`, by the
    /// recursion `x_{i,k+1} = x_{ik} x_k - q^{-1} x_k x_{ik}` (`q` for the
    /// tilde variant).
    pub fn root_vector(&self, i: usize, j: usize, dir: Direction, variant: Variant) -> SparseOperator {
        assert!(1 <= i && i < j && j <= self.rank() + 1, "root ({i}, {j}) out of range");
        let simple = |k: usize| match dir {
            Direction::Raise => &self.e[k - 1],
            Direction::Lower => &self.f[k - 1],
        };
        let coefficient = match variant {
            Variant::Plain => -self.q.inv(),
            Variant::Tilde => -self.q,
        };
        let mut x = simple(i).clone();
        for k in i + 1..j {
            let s = simple(k);
            x = SparseOperator::linear_combination(&x.matmul(s), Complex64::new(1.0, 0.0), &s.matmul(&x), coefficient);
        }
        x
    }

    /// All positive roots `(i, j)` in lexicographic order.
    pub fn positive_roots(&self) -> Vec<(usize, usize)> {
        let n = self.rank() + 1;
        (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let zip = |a: &[SparseOperator], b: &[SparseOperator]| a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect();
        Self {
            q: self.q,
            k_plus: zip(&self.k_plus, &other.k_plus),
            k_minus: zip(&self.k_minus, &other.k_minus),
            e: zip(&self.e, &other.e),
            f: zip(&self.f, &other.f),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RepModule {
    pub spec: RepSpec,
    pub states: Vec<GzPattern>,
    pub ops: GeneratorSet,
    index: HashMap<GzPattern, usize>,
}

impl RepModule {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn state_index(&self, p: &GzPattern) -> Option<usize> {
        self.index.get(&self.spec.canonicalize(p.clone())).copied()
    }

    pub fn k_plus(&self, l: usize) -> &SparseOperator {
        &self.ops.k_plus[l - 1]
    }

    pub fn k_minus(&self, l: usize) -> &SparseOperator {
        &self.ops.k_minus[l - 1]
    }

    pub fn e(&self, l: usize) -> &SparseOperator {
        &self.ops.e[l - 1]
    }

    pub fn f(&self, l: usize) -> &SparseOperator {
        &self.ops.f[l - 1]
    }

    pub fn root_vector(&self, i: usize, j: usize, dir: Direction, variant: Variant) -> SparseOperator {
        self.ops.root_vector(i, j, dir, variant)
    }

    /// `f_{l,l+n+1}` or `e_{l,l+n+1}` from the closed path-sum formula.
    pub fn root_vector_direct(&self, l: usize, n: usize, dir: Direction, variant: Variant) -> Result<SparseOperator> {
        let spec = &self.spec;
        if l == 0 || l + n + 1 > spec.n {
            return Err(Error::InvalidParams(format!("root ({l}, {}) out of range", l + n + 1)));
        }
        let mut triplets = Vec::new();
        for (col, p) in self.states.iter().enumerate() {
            for path in paths(l, n) {
                if let Some((target, value)) = direct_term(spec, p, l, &path, dir, variant)? {
                    let row = self.index.get(&target).copied().ok_or_else(|| {
                        Error::RelationViolation(format!(
                            "direct root-vector term leaves the state space at {}",
                            target.canonical_string(&spec.classes)
                        ))
                    })?;
                    triplets.push((row, col, value));
                }
            }
        }
        Ok(SparseOperator::from_triplets(self.dim(), triplets).pruned(spec.ctx.zero_tolerance))
    }
}

/// `(j_0, ..., j_n)` with `1 <= j_i <= l + i`.
fn paths(l: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..=n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=l + i).map(move |j| {
                    let mut next = prefix.clone();
                    next.push(j);
                    next
                })
            })
            .collect();
    }
    out
}

fn direct_term(
    spec: &RepSpec,
    p: &GzPattern,
    l: usize,
    path: &[usize],
    dir: Direction,
    variant: Variant,
) -> Result<Option<(GzPattern, Complex64)>> {
    let moved: Vec<Pos> = path.iter().enumerate().map(|(i, &j)| Pos::new(j, l + i)).collect();
    if moved.iter().any(|&pos| spec.is_frozen(pos)) {
        return Ok(None);
    }
    let mut factors = Vec::new();
    let mut value = Complex64::new(1.0, 0.0);
    for &pos in &moved {
        let c = spec.c.get(pos.i, pos.l);
        value *= match dir {
            Direction::Lower => c,
            Direction::Raise => c.inv(),
        };
        factors.extend(
            step_factors(spec, p, dir, pos.i, pos.l)?
                .into_iter()
                .filter(|f| !(moved.contains(&f.ends.0) && moved.contains(&f.ends.1))),
        );
    }
    for w in path.windows(2) {
        let e = eps(w[1], w[0]);
        value *= match dir {
            Direction::Lower => -e,
            Direction::Raise => e,
        };
    }
    let n = path.len() - 1;
    let (first, last) = (p.get(moved[0]), p.get(moved[n]));
    let (base, twice) = index_sum(spec, [(last, 1), (first, -1)]);
    let (mut base, mut twice) = match dir {
        Direction::Lower => (-base, -twice - 2 * n as i64),
        Direction::Raise => (base, twice),
    };
    if variant == Variant::Tilde {
        base = -base;
        twice = -twice;
    }
    value *= qpow_split(&spec.ctx, base, twice);
    let describe = || format!("zero denominator in a composite root vector at {}", p.canonical_string(&spec.classes));
    let Some(product) = factor_product(&factors, describe)? else {
        return Ok(None);
    };
    let mut target = p.clone();
    for &pos in &moved {
        target = target.with_shift(pos, dir.twice_step());
    }
    Ok(Some((spec.canonicalize(target), value * product)))
}

/// Check admissibility, enumerate the states and assemble all generators.
pub fn build_module(spec: &RepSpec) -> Result<RepModule> {
    let report = check_admissible(spec)?;
    if !report.passed() {
        return Err(Error::Inadmissible(report));
    }
    build_module_unchecked(spec)
}

/// As [`build_module`] without the admissibility precheck; divergences are
/// still reported.
pub fn build_module_unchecked(spec: &RepSpec) -> Result<RepModule> {
    let states = enumerate_states(spec)?;
    assemble(spec, states)
}

/// Assemble the generators on a given ordered list of states.
pub fn assemble(spec: &RepSpec, states: Vec<GzPattern>) -> Result<RepModule> {
    let dim = states.len();
    let index: HashMap<GzPattern, usize> = states.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    if index.len() != dim {
        return Err(Error::InvalidSpec("duplicate states".into()));
    }
    let ctx = &spec.ctx;
    let rank = spec.n - 1;
    let mut k_plus = Vec::with_capacity(rank);
    let mut k_minus = Vec::with_capacity(rank);
    let mut e = Vec::with_capacity(rank);
    let mut f = Vec::with_capacity(rank);
    for l in 1..=rank {
        let parts: Vec<(Complex64, i64)> = states.iter().map(|p| cartan_parts(spec, l, p)).collect();
        k_plus.push(SparseOperator::diagonal(parts.iter().map(|&(b, t)| qpow_split(ctx, b, t)).collect()));
        k_minus.push(SparseOperator::diagonal(parts.iter().map(|&(b, t)| qpow_split(ctx, -b, -t)).collect()));
        for (dir, out) in [(Direction::Raise, &mut e), (Direction::Lower, &mut f)] {
            let mut triplets = Vec::new();
            for (col, p) in states.iter().enumerate() {
                for (target, value) in simple_root_terms(spec, dir, l, p)? {
                    let row = *index.get(&target).ok_or_else(|| {
                        Error::InvalidSpec(format!(
                            "state list is not closed: {} is missing",
                            target.canonical_string(&spec.classes)
                        ))
                    })?;
                    triplets.push((row, col, value));
                }
            }
            out.push(SparseOperator::from_triplets(dim, triplets).pruned(ctx.zero_tolerance));
        }
    }
    let module = RepModule {
        spec: spec.clone(),
        states,
        ops: GeneratorSet {
            q: ctx.q(),
            k_plus,
            k_minus,
            e,
            f,
        },
        index,
    };
    smoke_check(&module)?;
    Ok(module)
}

fn smoke_check(module: &RepModule) -> Result<()> {
    let ctx = &module.spec.ctx;
    let q2 = ctx.q() * ctx.q();
    for l in 1..module.n() {
        let lhs = module.k_plus(l).matmul(module.e(l)).matmul(module.k_minus(l));
        let residual = (&lhs - &module.e(l).scale(q2)).max_abs();
        if residual > ctx.relation_tolerance * module.e(l).max_abs().max(1.0) {
            return Err(Error::RelationViolation(format!(
                "k_{l} e_{l} k_{l}^-1 - q^2 e_{l} has norm {residual:e}"
            )));
        }
    }
    Ok(())
}

/// Re-express a module built with all `eta = 1/2` in the normalisation of
/// `target`, which may differ from the module's spec only in `eta`.
///
/// Each coupling between `p_{i,l+1}` and `p_jl` contributes
/// `Gamma_q(eps (p_{i,l+1} - p_jl + 1/2) + 1/2)^{eps (eta_ijl - 1/2)}` to the
/// basis normalisation. Only ratios across a unit shift are needed, and
/// those are single brackets by `Gamma_q(x + 1) = [x] Gamma_q(x)`.
pub fn rescale_to_eta(module: &RepModule, target: &RepSpec) -> Result<RepModule> {
    let spec = &module.spec;
    if !spec.eta.all(Eta::Half) {
        return Err(Error::Precondition("the source module must have all eta = 1/2".into()));
    }
    let same = spec.n == target.n
        && spec.seed == target.seed
        && spec.classes == target.classes
        && spec.c == target.c
        && spec.periodic == target.periodic
        && spec.frozen == target.frozen
        && spec.ctx.mode() == target.ctx.mode();
    if !same {
        return Err(Error::Precondition("target spec may differ only in eta".into()));
    }
    target.validate()?;
    let mut seen = HashMap::new();
    for pos in spec.seed.positions().filter(|p| p.l < spec.n) {
        let class = spec.seed.get(pos).class;
        if let Some(other) = seen.insert(class, pos) {
            return Err(Error::CoincidentClasses(format!(
                "p_{}{} and p_{}{} share class {}",
                other.i, other.l, pos.i, pos.l, spec.classes[class.0].name
            )));
        }
    }
    let mut ops = module.ops.clone();
    for l in 1..spec.n {
        let mut f_entries = Vec::new();
        for (row, col, v) in module.f(l).triplets() {
            let r = lowering_ratio(target, &module.states[col], &module.states[row], l)?;
            f_entries.push((row, col, v * r));
        }
        let mut e_entries = Vec::new();
        for (row, col, v) in module.e(l).triplets() {
            let r = lowering_ratio(target, &module.states[row], &module.states[col], l)?;
            e_entries.push((row, col, v / r));
        }
        ops.f[l - 1] = SparseOperator::from_triplets(module.dim(), f_entries);
        ops.e[l - 1] = SparseOperator::from_triplets(module.dim(), e_entries);
    }
    Ok(RepModule {
        spec: target.clone(),
        states: module.states.clone(),
        ops,
        index: module.index.clone(),
    })
}

/// `lambda(p) / lambda(p')` for the move `p -> p'` lowering one index of row
/// `l`: a product of `[a]^{1/2 - eta}` over the couplings of that index.
fn lowering_ratio(target: &RepSpec, p: &GzPattern, p_lower: &GzPattern, l: usize) -> Result<Complex64> {
    let j = (1..=l)
        .find(|&j| p.get(Pos::new(j, l)) != p_lower.get(Pos::new(j, l)))
        .ok_or_else(|| Error::Precondition("entry does not move an index of its row".into()))?;
    let moving = Pos::new(j, l);
    let pj = p.get(moving);
    let mut ratio = Complex64::new(1.0, 0.0);
    let mut apply = |bracket: Option<Complex64>, twice_exponent: i8| -> Result<()> {
        let b = bracket.ok_or_else(|| Error::CoincidentClasses("a coupling bracket vanishes".into()))?;
        let root = half_power(b);
        match twice_exponent {
            1 => ratio *= root,
            -1 => ratio /= root,
            _ => {}
        }
        Ok(())
    };
    for i in 1..=l + 1 {
        let up = Pos::new(i, l + 1);
        // Gamma_q(x + 1) / Gamma_q(x) = [x] with x = eps (p_{i,l+1} - p_jl + 1)
        let gamma_step = bracket(target, p.get(up), pj, 2, eps(i, j))?;
        apply(gamma_step, 1 - target.eta.get(i, j, l).twice() as i8)?;
    }
    for i in 1..l {
        let low = Pos::new(i, l - 1);
        let gamma_step = bracket(target, pj, p.get(low), 0, eps(j, i))?;
        apply(gamma_step, target.eta.get(j, i, l - 1).twice() as i8 - 1)?;
    }
    Ok(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::FracClass;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn triplet_spec() -> RepSpec {
        let ctx = QContext::generic(0.7).unwrap();
        RepSpec::new(
            ctx,
            vec![FracClass::new("x", c(0.0, 0.0))],
            vec![IndexValue::integer(0, 1), IndexValue::integer(0, -2)],
            None,
        )
        .unwrap()
        .with_periodic(false)
        .unwrap()
    }

    fn pattern(p11: i64) -> GzPattern {
        GzPattern::new(vec![
            vec![IndexValue::integer(0, p11)],
            vec![IndexValue::integer(0, 1), IndexValue::integer(0, -2)],
        ])
        .unwrap()
    }

    #[test]
    fn cartan_exponent_on_triplet() {
        let spec = triplet_spec();
        assert_eq!(cartan_exponent(&spec, 1, &pattern(1)), c(2.0, 0.0));
        assert_eq!(cartan_exponent(&spec, 1, &pattern(0)), c(0.0, 0.0));
        let shift = cartan_exponent(&spec, 1, &pattern(0)) - cartan_exponent(&spec, 1, &pattern(1));
        assert_eq!(shift, c(-2.0, 0.0));
    }

    #[test]
    fn lowering_the_highest_state() {
        let spec = triplet_spec();
        let terms = simple_root_terms(&spec, Direction::Lower, 1, &pattern(1)).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, pattern(0));
        let expected = (spec.ctx.qnum(c(1.0, 0.0)) * spec.ctx.qnum(c(2.0, 0.0))).sqrt();
        assert!((terms[0].1 - expected).norm() < 1e-14);
        assert!(simple_root_terms(&spec, Direction::Raise, 1, &pattern(1)).unwrap().is_empty());
    }

    #[test]
    fn triplet_matrices() {
        let module = build_module(&triplet_spec()).unwrap();
        assert_eq!(module.dim(), 3);
        assert_eq!(module.e(1).nnz(), 2);
        assert_eq!(module.f(1).nnz(), 2);
        assert!((module.e(1) - &module.f(1).adjoint()).max_abs() < 1e-14);
    }

    #[test]
    fn paths_enumerate_all_choices() {
        assert_eq!(paths(1, 0), vec![vec![1]]);
        assert_eq!(paths(1, 1).len(), 2);
        assert_eq!(paths(1, 2).len(), 6);
        assert_eq!(paths(2, 1).len(), 6);
    }

    #[test]
    fn canonical_brackets_are_antisymmetric_bitwise() {
        let ctx = QContext::root_of_unity(5).unwrap();
        let spec = RepSpec::new(
            ctx,
            vec![FracClass::new("a", c(0.13, 0.2)), FracClass::new("b", c(0.31, -0.1))],
            vec![IndexValue::new(0, 0), IndexValue::new(1, 0)],
            None,
        )
        .unwrap();
        for t in -12..12 {
            let ab = class_bracket(&spec, ClassId(0), ClassId(1), t).unwrap().unwrap();
            let ba = class_bracket(&spec, ClassId(1), ClassId(0), -t).unwrap().unwrap();
            assert_eq!(ab, -ba);
            let same = class_bracket(&spec, ClassId(0), ClassId(0), t).unwrap();
            let reverse = class_bracket(&spec, ClassId(0), ClassId(0), -t).unwrap();
            assert_eq!(same.map(|v| -v), reverse);
            assert_eq!(same.is_none(), t % 5 == 0);
        }
    }
}
