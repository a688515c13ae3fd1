//! Gelfand-Zetlin patterns with complex indices.
//!
//! An index `p_il` is stored as a fractional-part class plus an integer
//! count of half steps, so every question of the form "is `q^{p_il}` equal
//! to `q^{p_jl}`" reduces to an integer congruence.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_complex::Complex64;

use crate::action;
use crate::error::{Error, Result};
use crate::qcontext::QContext;

pub const DEFAULT_MAX_STATES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

/// A fractional-part class: all indices whose value is `base + k/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct FracClass {
    pub name: String,
    pub base: Complex64,
}

impl FracClass {
    pub fn new(name: impl Into<String>, base: Complex64) -> Self {
        Self {
            name: name.into(),
            base,
        }
    }
}

/// `value = classes[class].base + twice_offset / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexValue {
    pub class: ClassId,
    pub twice_offset: i64,
}

impl IndexValue {
    pub fn new(class: usize, twice_offset: i64) -> Self {
        Self {
            class: ClassId(class),
            twice_offset,
        }
    }

    /// An index in `class` at integer offset `offset`.
    pub fn integer(class: usize, offset: i64) -> Self {
        Self::new(class, 2 * offset)
    }

    pub fn shifted(self, twice: i64) -> Self {
        Self {
            twice_offset: self.twice_offset + twice,
            ..self
        }
    }
}

/// Position of an index in the triangle, 1-based: `i`-th entry of row `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub i: usize,
    pub l: usize,
}

impl Pos {
    pub fn new(i: usize, l: usize) -> Self {
        Self { i, l }
    }
}

/// A triangular array; row `l` (1-based) holds `l` indices, row `N` is the
/// fixed top row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GzPattern {
    rows: Vec<Vec<IndexValue>>,
}

impl GzPattern {
    pub fn new(rows: Vec<Vec<IndexValue>>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidSpec("a pattern needs at least two rows".into()));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::InvalidSpec(format!(
                    "row {} must have {} entries, found {}",
                    k + 1,
                    k + 1,
                    row.len()
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, pos: Pos) -> IndexValue {
        self.rows[pos.l - 1][pos.i - 1]
    }

    pub fn row(&self, l: usize) -> &[IndexValue] {
        &self.rows[l - 1]
    }

    pub fn rows(&self) -> &[Vec<IndexValue>] {
        &self.rows
    }

    pub fn set(&mut self, pos: Pos, value: IndexValue) {
        self.rows[pos.l - 1][pos.i - 1] = value;
    }

    pub fn with_shift(&self, pos: Pos, twice: i64) -> Self {
        let mut out = self.clone();
        let v = out.get(pos).shifted(twice);
        out.set(pos, v);
        out
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        (1..=self.n()).flat_map(|l| (1..=l).map(move |i| Pos::new(i, l)))
    }

    /// `row:entries` rendering, top row first, e.g. `a:0 b:-4 | c:2 | c:0`.
    /// Each entry is `class_name:twice_offset`.
    pub fn canonical_string(&self, classes: &[FracClass]) -> String {
        self.rows
            .iter()
            .rev()
            .map(|row| {
                row.iter()
                    .map(|v| format!("{}:{}", classes[v.class.0].name, v.twice_offset))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl Ord for GzPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.iter().rev().cmp(other.rows.iter().rev())
    }
}

impl PartialOrd for GzPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eta {
    Zero,
    Half,
    One,
}

impl Eta {
    /// `2 eta`.
    pub fn twice(self) -> u8 {
        match self {
            Eta::Zero => 0,
            Eta::Half => 1,
            Eta::One => 2,
        }
    }

    pub fn from_f64(x: f64) -> Option<Self> {
        if x == 0.0 {
            Some(Eta::Zero)
        } else if x == 0.5 {
            Some(Eta::Half)
        } else if x == 1.0 {
            Some(Eta::One)
        } else {
            None
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.twice()) / 2.0
    }
}

/// Exponents `eta_{ijl}` coupling `p_{i,l+1}` (upper) and `p_{jl}` (lower),
/// for `1 <= l < N`, `1 <= i <= l+1`, `1 <= j <= l`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaTable {
    values: Vec<Vec<Vec<Eta>>>,
}

impl EtaTable {
    pub fn uniform(n: usize, eta: Eta) -> Self {
        let values = (1..n).map(|l| vec![vec![eta; l]; l + 1]).collect();
        Self { values }
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> Eta {
        self.values[l - 1][i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, l: usize, eta: Eta) {
        self.values[l - 1][i - 1][j - 1] = eta;
    }

    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), Eta)> + '_ {
        self.values.iter().enumerate().flat_map(|(l0, upper)| {
            upper.iter().enumerate().flat_map(move |(i0, lower)| {
                lower
                    .iter()
                    .enumerate()
                    .map(move |(j0, &e)| ((i0 + 1, j0 + 1, l0 + 1), e))
            })
        })
    }

    pub fn all(&self, eta: Eta) -> bool {
        self.iter().all(|(_, e)| e == eta)
    }
}

/// Free normalisation coefficients `c_jl`, `1 <= j <= l < N`.
#[derive(Clone, Debug, PartialEq)]
pub struct CTable {
    values: Vec<Vec<Complex64>>,
}

impl CTable {
    pub fn ones(n: usize) -> Self {
        Self {
            values: (1..n).map(|l| vec![Complex64::new(1.0, 0.0); l]).collect(),
        }
    }

    pub fn from_rows(values: Vec<Vec<Complex64>>) -> Self {
        Self { values }
    }

    pub fn get(&self, j: usize, l: usize) -> Complex64 {
        self.values[l - 1][j - 1]
    }

    pub fn set(&mut self, j: usize, l: usize, c: Complex64) {
        self.values[l - 1][j - 1] = c;
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.values
    }
}

/// Everything that defines a representation.
#[derive(Clone, Debug)]
pub struct RepSpec {
    pub n: usize,
    pub ctx: QContext,
    pub classes: Vec<FracClass>,
    /// Starting state; its row `N` is the fixed top row.
    pub seed: GzPattern,
    pub c: CTable,
    pub eta: EtaTable,
    /// Identify states whose indices agree modulo `m`.
    pub periodic: bool,
    /// Sizes `N_1` of frozen upper-left sub-triangles.
    pub frozen: Vec<usize>,
    pub max_states: usize,
}

impl RepSpec {
    /// A spec with default `c = 1`, `eta = 1/2`, periodic identification in
    /// root mode, and lower rows seeded from the top row (`p_il = p_iN`).
    pub fn new(
        ctx: QContext,
        classes: Vec<FracClass>,
        top_row: Vec<IndexValue>,
        seed_lower_rows: Option<Vec<Vec<IndexValue>>>,
    ) -> Result<Self> {
        let n = top_row.len();
        if n < 2 {
            return Err(Error::InvalidSpec("N must be at least 2".into()));
        }
        let mut rows = match seed_lower_rows {
            Some(rows) => {
                if rows.len() != n - 1 {
                    return Err(Error::InvalidSpec(format!(
                        "expected {} seed rows below the top row, found {}",
                        n - 1,
                        rows.len()
                    )));
                }
                rows
            }
            None => (1..n).map(|l| top_row[..l].to_vec()).collect(),
        };
        rows.push(top_row);
        let periodic = ctx.is_root_of_unity();
        let spec = Self {
            n,
            ctx,
            classes,
            seed: GzPattern::new(rows)?,
            c: CTable::ones(n),
            eta: EtaTable::uniform(n, Eta::Half),
            periodic,
            frozen: Vec::new(),
            max_states: DEFAULT_MAX_STATES,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_c(mut self, c: CTable) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    pub fn with_eta(mut self, eta: EtaTable) -> Result<Self> {
        self.eta = eta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_periodic(mut self, periodic: bool) -> Result<Self> {
        self.periodic = periodic;
        self.validate()?;
        Ok(self)
    }

    pub fn with_frozen(mut self, frozen: Vec<usize>) -> Result<Self> {
        self.frozen = frozen;
        self.validate()?;
        Ok(self)
    }

    pub fn top_row(&self) -> &[IndexValue] {
        self.seed.row(self.n)
    }

    pub fn value(&self, v: IndexValue) -> Complex64 {
        self.classes[v.class.0].base + v.twice_offset as f64 / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n < 2 || self.seed.n() != n {
            return Err(Error::InvalidSpec(format!(
                "pattern has {} rows but N = {n}",
                self.seed.n()
            )));
        }
        for pos in self.seed.positions() {
            let v = self.seed.get(pos);
            if v.class.0 >= self.classes.len() {
                return Err(Error::InvalidSpec(format!(
                    "index ({}, {}) refers to unknown class #{}",
                    pos.i, pos.l, v.class.0
                )));
            }
        }
        for (a, ca) in self.classes.iter().enumerate() {
            if !(ca.base.re.is_finite() && ca.base.im.is_finite()) {
                return Err(Error::InvalidSpec(format!("class {} has a non-finite base", ca.name)));
            }
            for cb in &self.classes[a + 1..] {
                let d = ca.base - cb.base;
                let twice = 2.0 * d.re;
                if d.im.abs() < 1e-9 && (twice - twice.round()).abs() < 1e-9 {
                    return Err(Error::InvalidSpec(format!(
                        "classes {} and {} coincide modulo 1/2",
                        ca.name, cb.name
                    )));
                }
            }
        }
        if self.c.rows().len() != n - 1
            || self.c.rows().iter().enumerate().any(|(k, r)| r.len() != k + 1)
        {
            return Err(Error::InvalidSpec("c table has the wrong shape".into()));
        }
        for (l0, row) in self.c.rows().iter().enumerate() {
            for (j0, c) in row.iter().enumerate() {
                if c.norm() == 0.0 || !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::InvalidSpec(format!(
                        "c must be nonzero (c_{}{})",
                        j0 + 1,
                        l0 + 1
                    )));
                }
            }
        }
        if self.eta.n() != n {
            return Err(Error::InvalidSpec("eta table has the wrong shape".into()));
        }
        if self.periodic && !self.ctx.is_root_of_unity() {
            return Err(Error::InvalidSpec(
                "periodic identification needs a root of unity".into(),
            ));
        }
        if self.frozen.len() > 1 {
            return Err(Error::InvalidSpec(
                "at most one frozen upper-left triangle is supported".into(),
            ));
        }
        for &n1 in &self.frozen {
            if n1 < 2 || n1 >= n {
                return Err(Error::InvalidSpec(format!(
                    "frozen triangle size must lie in 2..{n}, got {n1}"
                )));
            }
            for pos in frozen_positions(n, n1) {
                if pos.l == n {
                    continue;
                }
                let here = self.seed.get(pos);
                let above = self.seed.get(Pos::new(pos.i, pos.l + 1));
                let right = self.seed.get(Pos::new(pos.i + 1, pos.l + 1));
                let ok = here == above
                    && here.class == right.class
                    && here.twice_offset == right.twice_offset + 2;
                if !ok {
                    return Err(Error::InvalidSpec(format!(
                        "frozen index ({}, {}) violates p_(i,l+1) = p_il = p_(i+1,l+1) + 1",
                        pos.i, pos.l
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_frozen(&self, pos: Pos) -> bool {
        self.frozen
            .iter()
            .any(|&n1| pos.l > self.n - n1 && pos.i + self.n <= pos.l + n1)
    }

    /// The frozen index that still enters matrix elements: `p_{1,N-N_1+1}`.
    pub fn frozen_survivor(&self) -> Option<Pos> {
        self.frozen.first().map(|&n1| Pos::new(1, self.n - n1 + 1))
    }

    /// Reduce the movable rows modulo `m` in periodic mode.
    pub fn canonicalize(&self, mut p: GzPattern) -> GzPattern {
        if self.periodic {
            if let Some(m) = self.ctx.order() {
                let period = 2 * i64::from(m);
                for l in 1..self.n {
                    for i in 1..=l {
                        let pos = Pos::new(i, l);
                        let mut v = p.get(pos);
                        v.twice_offset = v.twice_offset.rem_euclid(period);
                        p.set(pos, v);
                    }
                }
            }
        }
        p
    }

    /// Shift every index so that `p_NN = 0`. Matrix elements depend only on
    /// differences of indices, so the module is unchanged.
    pub fn normalized_gauge(&self) -> Self {
        let anchor = self.seed.get(Pos::new(self.n, self.n));
        let shift_base = self.classes[anchor.class.0].base;
        let mut out = self.clone();
        for class in &mut out.classes {
            class.base -= shift_base;
        }
        let rows = self
            .seed
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.shifted(-anchor.twice_offset))
                    .collect()
            })
            .collect();
        out.seed = GzPattern::new(rows).expect("shape preserved");
        out
    }

    /// All indices lie in a single class and no periodic identification is
    /// made: the data of a usual q-deformed representation.
    pub fn is_integer_pattern(&self) -> bool {
        let first = self.seed.get(Pos::new(1, 1)).class;
        !self.periodic && self.seed.positions().all(|p| self.seed.get(p).class == first)
    }

    /// `q^{a} = q^{b}` for two indices, decided exactly.
    pub fn q_powers_equal(&self, a: IndexValue, b: IndexValue) -> bool {
        if a.class != b.class {
            return false;
        }
        let d = a.twice_offset - b.twice_offset;
        match self.ctx.order() {
            Some(m) => d.rem_euclid(2 * i64::from(m)) == 0,
            None => d == 0,
        }
    }
}

/// Positions `(j, l)` with `N - N_1 + 1 <= l <= N`, `1 <= j <= l - N + N_1`.
pub fn frozen_positions(n: usize, n1: usize) -> Vec<Pos> {
    (n - n1 + 1..=n)
        .flat_map(|l| (1..=l + n1 - n).map(move |j| Pos::new(j, l)))
        .collect()
}

/// Representative of `x` modulo 1/2 with real part in `[0, 1/2)`; the
/// imaginary part is passed through.
pub fn frac_part(x: Complex64) -> Complex64 {
    let re = x.re - (2.0 * x.re).floor() / 2.0;
    Complex64::new(re, x.im)
}

/// `n_l(x)`: number of non-frozen indices of row `l` in class `class`.
/// Row `N` is the top row, lower rows come from the seed pattern.
pub fn n_count(spec: &RepSpec, l: usize, class: ClassId) -> usize {
    if l == 0 || l > spec.n {
        return 0;
    }
    (1..=l)
        .map(|i| Pos::new(i, l))
        .filter(|&pos| !spec.is_frozen(pos) && spec.seed.get(pos).class == class)
        .count()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// `n_{l+1} - 2 n_l + n_{l-1} < 0` with `n_l > 1`.
    Convexity {
        level: usize,
        class: String,
        second_difference: i64,
    },
    /// The same condition at the row just below a frozen triangle, with the
    /// surviving frozen index counted once more.
    FrozenConvexity {
        level: usize,
        class: String,
        second_difference: i64,
    },
    /// One of the two eta sums guarding an imminent collision of `p_jl`
    /// with `p_il` is `<= 1/2`.
    EtaSum {
        level: usize,
        j: usize,
        i: usize,
        which: u8,
        sum: f64,
    },
    /// A usual representation at a root of unity with `p_1N - p_NN > m`.
    TopRowSpread { spread: i64, m: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Convexity {
                level,
                class,
                second_difference,
            } => write!(
                f,
                "n_{{l+1}} - 2 n_l + n_{{l-1}} = {second_difference} < 0 at l = {level}, class {class}"
            ),
            Violation::FrozenConvexity {
                level,
                class,
                second_difference,
            } => write!(
                f,
                "frozen-adjusted n_{{l+1}} - 2 n_l + n_{{l-1}} + 1 = {second_difference} < 0 at l = {level}, class {class}"
            ),
            Violation::EtaSum {
                level,
                j,
                i,
                which,
                sum,
            } => write!(
                f,
                "eta sum #{which} = {sum} <= 1/2 for p_{j}{level} approaching p_{i}{level}"
            ),
            Violation::TopRowSpread { spread, m } => {
                write!(f, "top row spread p_1N - p_NN = {spread} exceeds m = {m}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AdmissibilityReport {
    pub violations: Vec<Violation>,
    /// All `eta = 1/2`, so the eta sums hold automatically.
    pub eta_conditions_automatic: bool,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "admissible");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Sufficient conditions for the matrix elements to stay finite, evaluated
/// on the seed pattern. `build_module` remains the final arbiter.
pub fn check_admissible(spec: &RepSpec) -> Result<AdmissibilityReport> {
    spec.validate()?;
    let n = spec.n;
    let mut report = AdmissibilityReport::default();
    let survivor_row = spec.frozen_survivor().map(|s| s.l - 1);
    let survivor_class = spec.frozen_survivor().map(|_| spec.top_row()[0].class);

    for (c, class) in spec.classes.iter().enumerate() {
        let class_id = ClassId(c);
        for l in 1..n {
            let here = n_count(spec, l, class_id) as i64;
            if here <= 1 {
                continue;
            }
            let second =
                n_count(spec, l + 1, class_id) as i64 - 2 * here + n_count(spec, l - 1, class_id) as i64;
            if survivor_row == Some(l) && survivor_class == Some(class_id) {
                if second + 1 < 0 {
                    report.violations.push(Violation::FrozenConvexity {
                        level: l,
                        class: class.name.clone(),
                        second_difference: second + 1,
                    });
                }
            } else if second < 0 {
                report.violations.push(Violation::Convexity {
                    level: l,
                    class: class.name.clone(),
                    second_difference: second,
                });
            }
        }
    }

    report.eta_conditions_automatic = spec.eta.all(Eta::Half);
    if !report.eta_conditions_automatic {
        check_eta_sums(spec, &mut report);
    }

    if let Some(m) = spec.ctx.order() {
        if spec.is_integer_pattern() && spec.frozen.is_empty() {
            let top = spec.top_row();
            let spread = (top[0].twice_offset - top[n - 1].twice_offset) / 2;
            if spread > i64::from(m) {
                report.violations.push(Violation::TopRowSpread { spread, m });
            }
        }
    }
    Ok(report)
}

fn check_eta_sums(spec: &RepSpec, report: &mut AdmissibilityReport) {
    let p = &spec.seed;
    for l in 1..spec.n {
        for j in 1..=l {
            for i in (1..=l).filter(|&i| i != j) {
                let pj = p.get(Pos::new(j, l));
                let pi = p.get(Pos::new(i, l));
                if spec.is_frozen(Pos::new(j, l)) || spec.is_frozen(Pos::new(i, l)) {
                    continue;
                }
                // p_jl - 1 would land on p_il
                if !spec.q_powers_equal(pi, pj.shifted(-2)) {
                    continue;
                }
                let mut first = 0.0;
                let mut second = 0.0;
                for k in 1..=l + 1 {
                    if spec.q_powers_equal(p.get(Pos::new(k, l + 1)), pj.shifted(-2)) {
                        let eta = spec.eta.get(k, j, l).as_f64();
                        first += 1.0 - eta;
                        second += eta;
                    }
                }
                for k in 1..l {
                    if spec.q_powers_equal(p.get(Pos::new(k, l - 1)), pj) {
                        let eta = spec.eta.get(j, k, l - 1).as_f64();
                        first += eta;
                        second += 1.0 - eta;
                    }
                }
                for (which, sum) in [(1u8, first), (2u8, second)] {
                    if sum <= 0.5 {
                        report.violations.push(Violation::EtaSum {
                            level: l,
                            j,
                            i,
                            which,
                            sum,
                        });
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Closure of the seed under single-index moves with non-vanishing matrix
/// elements, in canonical (lexicographic, top row first) order.
pub fn enumerate_states(spec: &RepSpec) -> Result<Vec<GzPattern>> {
    enumerate_states_with(spec, Traversal::BreadthFirst)
}

pub fn enumerate_states_with(spec: &RepSpec, traversal: Traversal) -> Result<Vec<GzPattern>> {
    spec.validate()?;
    let seed = spec.canonicalize(spec.seed.clone());
    let mut seen: HashSet<GzPattern> = HashSet::new();
    let mut frontier: VecDeque<GzPattern> = VecDeque::new();
    seen.insert(seed.clone());
    frontier.push_back(seed);
    while let Some(p) = match traversal {
        Traversal::BreadthFirst => frontier.pop_front(),
        Traversal::DepthFirst => frontier.pop_back(),
    } {
        for target in action::neighbors(spec, &p)? {
            if seen.insert(target.clone()) {
                if seen.len() > spec.max_states {
                    return Err(Error::BudgetExceeded {
                        cap: spec.max_states,
                    });
                }
                frontier.push_back(target);
            }
        }
    }
    let mut states: Vec<GzPattern> = seen.into_iter().collect();
    states.sort();
    Ok(states)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionQuery {
    Periodic { n: u32, m: u32 },
    SemiPeriodic { n: u32, m: u32 },
    Nilpotent { n: u32, m: u32 },
    /// Truncated flat representation of `U_q(sl(3))` with `p_33 = 0`.
    TruncatedFlatSl3 { m: u32, p13: u32 },
}

/// Both closed forms of the truncated flat `sl(3)` dimension:
/// `m^2 - d1 - d2` and `d1' - d2'`.
pub fn truncated_flat_sl3_forms(m: u32, p13: u32) -> (i64, i64) {
    let (m, p) = (i64::from(m), i64::from(p13));
    let d1 = p * (p - 1) / 2;
    let d2 = (m - p + 1) * (m - p) / 2;
    let d1_prime = (m + 1) * p * (m + 1 - p) / 2;
    let d2_prime = (m - 1) * (p - 1) * (m - p) / 2;
    (m * m - d1 - d2, d1_prime - d2_prime)
}

pub fn predicted_dimension(query: DimensionQuery) -> Result<u64> {
    match query {
        DimensionQuery::Periodic { n, m }
        | DimensionQuery::SemiPeriodic { n, m }
        | DimensionQuery::Nilpotent { n, m } => {
            if n < 2 || m < 1 {
                return Err(Error::InvalidParams(format!("need N >= 2 and m >= 1, got N={n}, m={m}")));
            }
            let exponent = n * (n - 1) / 2;
            u64::from(m)
                .checked_pow(exponent)
                .ok_or_else(|| Error::InvalidParams("dimension overflows u64".into()))
        }
        DimensionQuery::TruncatedFlatSl3 { m, p13 } => {
            if p13 < 1 || p13 > m {
                return Err(Error::InvalidParams(format!(
                    "p13 must lie in 1..={m}, got {p13}"
                )));
            }
            let (truncated, quotient) = truncated_flat_sl3_forms(m, p13);
            if truncated != quotient {
                return Err(Error::InvalidParams(format!(
                    "dimension forms disagree: {truncated} vs {quotient}"
                )));
            }
            Ok(truncated as u64)
        }
    }
}
