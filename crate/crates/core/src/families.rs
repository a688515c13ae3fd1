//! Ready-made specs for the representation families, with seeded random
//! continuous parameters.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::patterns::{CTable, Eta, EtaTable, FracClass, IndexValue, RepSpec};
use crate::qcontext::QContext;

fn random_base(rng: &mut ChaCha8Rng, real: bool) -> Complex64 {
    let re = rng.gen_range(0.02..0.48);
    let im = if real { 0.0 } else { rng.gen_range(-0.4..0.4) };
    Complex64::new(re, im)
}

/// Nonzero `c_jl` with modulus in `[0.5, 1.5]` and a random phase.
pub fn random_c(n: usize, rng: &mut ChaCha8Rng) -> CTable {
    let rows = (1..n)
        .map(|l| {
            (0..l)
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(-3.0..3.0)))
                .collect()
        })
        .collect();
    CTable::from_rows(rows)
}

/// Every index in its own class: all `n_l(x) <= 1`.
pub fn generic_periodic(n: usize, m: u32, seed: u64) -> Result<RepSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = n * (n + 1) / 2;
    let classes: Vec<FracClass> = (0..count)
        .map(|k| FracClass::new(format!("x{k}"), random_base(&mut rng, false)))
        .collect();
    let mut next = 0;
    let mut rows: Vec<Vec<IndexValue>> = (1..=n)
        .map(|l| {
            (0..l)
                .map(|_| {
                    next += 1;
                    IndexValue::new(next - 1, 0)
                })
                .collect()
        })
        .collect();
    let top = rows.pop().expect("n >= 1");
    let c = random_c(n, &mut rng);
    RepSpec::new(QContext::root_of_unity(m)?, classes, top, Some(rows))?.with_c(c)
}

/// Column `i` (the indices `p_il`, `l >= i`) shares the class of `p_iN`;
/// seeded at `p_il = p_iN`.
fn column_spec(n: usize, m: u32, seed: u64, real: bool, unit_c: bool) -> Result<RepSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<FracClass> = (0..n)
        .map(|k| FracClass::new(format!("x{k}"), random_base(&mut rng, real)))
        .collect();
    let top: Vec<IndexValue> = (0..n).map(|i| IndexValue::new(i, 0)).collect();
    let spec = RepSpec::new(QContext::root_of_unity(m)?, classes, top, None)?;
    if unit_c {
        Ok(spec)
    } else {
        let c = random_c(n, &mut rng);
        spec.with_c(c)
    }
}

/// `eta = 1` with same-class columns: a highest-weight module on which the
/// `f`'s stay periodic.
pub fn semi_periodic(n: usize, m: u32, seed: u64) -> Result<RepSpec> {
    column_spec(n, m, seed, false, false)?.with_eta(EtaTable::uniform(n, Eta::One))
}

/// `eta = 1/2` with same-class columns and no periodic identification.
pub fn nilpotent(n: usize, m: u32, seed: u64) -> Result<RepSpec> {
    column_spec(n, m, seed, false, false)?.with_periodic(false)
}

/// Nilpotent spec with real class bases and `c = 1`.
pub fn nilpotent_real(n: usize, m: u32, seed: u64) -> Result<RepSpec> {
    column_spec(n, m, seed, true, true)?.with_periodic(false)
}

fn integer_spec(ctx: QContext, top: &[i64]) -> Result<RepSpec> {
    let top = top.iter().map(|&t| IndexValue::integer(0, t)).collect();
    RepSpec::new(ctx, vec![FracClass::new("z", Complex64::new(0.0, 0.0))], top, None)?.with_periodic(false)
}

/// A usual (integer-pattern) representation at `q = exp(i phase)`.
pub fn usual(top: &[i64], phase: f64) -> Result<RepSpec> {
    integer_spec(QContext::generic(phase)?, top)
}

/// A usual representation at a root of unity.
pub fn usual_at_root(top: &[i64], m: u32) -> Result<RepSpec> {
    integer_spec(QContext::root_of_unity(m)?, top)
}

/// Truncated flat `U_q(sl(3))` module at `q = exp(2 pi i / m)`: one
/// integer class, top row `(p13, p13 - 1, 0)` with the triangle
/// `p12 = p13 = p23 + 1` frozen, seeded at `p22 = p11 = 1`.
pub fn truncated_flat_sl3(m: u32, p13: i64) -> Result<RepSpec> {
    let v = |t: i64| IndexValue::integer(0, t);
    let top = vec![v(p13), v(p13 - 1), v(0)];
    let lower = vec![vec![v(1)], vec![v(p13), v(1)]];
    RepSpec::new(
        QContext::root_of_unity(m)?,
        vec![FracClass::new("z", Complex64::new(0.0, 0.0))],
        top,
        Some(lower),
    )?
    .with_periodic(false)?
    .with_frozen(vec![2])
}
