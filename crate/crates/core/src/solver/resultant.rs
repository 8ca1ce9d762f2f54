//! Exact root counting for two equations in two unknowns by Sylvester
//! resultants over the rationals.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pencil::CoefficientSystem;
use crate::poly::{rat, MultiPoly, PolyMatrix, Rational, UniPoly};

const SHEAR_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum OracleResult {
    /// Affine common roots with `c_n != 0`, counted with multiplicity.
    Count {
        count: usize,
        /// `Res_y` after the shear `z1 = x + shear * y, z2 = y`.
        resultant: UniPoly,
        shear: Rational,
        /// Roots of the resultant attributed to `c_n = 0`, with multiplicity.
        removed: usize,
    },
    /// The resultant vanishes identically: the roots are not isolated.
    Degenerate,
}

impl OracleResult {
    pub fn count(&self) -> Option<usize> {
        match self {
            OracleResult::Count { count, .. } => Some(*count),
            OracleResult::Degenerate => None,
        }
    }
}

/// Counts the roots of an exact two-variable pole-placement system.
pub fn resultant_oracle_2d(sys: &CoefficientSystem<Rational>, seed: u64) -> Result<OracleResult> {
    if sys.n() != 2 {
        return Err(Error::Unsupported(format!(
            "resultant oracle needs exactly 2 unknowns, got {}",
            sys.n()
        )));
    }
    let eqs = sys.equations();
    count_common_roots(&eqs[0], &eqs[1], Some(sys.leading()), seed)
}

/// Counts affine common roots of `f` and `g` (two variables) at which `lead`
/// does not vanish.
pub fn count_common_roots(
    f: &MultiPoly<Rational>,
    g: &MultiPoly<Rational>,
    lead: Option<&MultiPoly<Rational>>,
    seed: u64,
) -> Result<OracleResult> {
    for p in [Some(f), Some(g), lead].into_iter().flatten() {
        if p.nvars() != 2 {
            return Err(Error::Dimension {
                what: "oracle polynomial variables",
                expected: 2,
                found: p.nvars(),
            });
        }
    }
    if f.is_zero() || g.is_zero() {
        return Ok(OracleResult::Degenerate);
    }
    let lead = lead.filter(|c| !c.is_constant() || c.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..SHEAR_ATTEMPTS {
        let shear = if attempt == 0 {
            Rational::zero()
        } else {
            rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
        };
        let sf = shear_poly(f, &shear);
        let sg = shear_poly(g, &shear);
        let sc = lead.map(|c| shear_poly(c, &shear));
        let monic_in_y = |p: &MultiPoly<Rational>| p.is_zero() || leading_in_y_is_constant(p);
        if !(monic_in_y(&sf) && monic_in_y(&sg) && sc.as_ref().map_or(true, monic_in_y)) {
            continue;
        }
        let r = resultant_y(&sf, &sg)?;
        if r.is_zero() {
            return Ok(OracleResult::Degenerate);
        }
        let total = r.degree().unwrap_or(0);
        let removed = match &sc {
            None => 0,
            Some(c) if c.is_zero() => total,
            Some(c) => {
                let g_base = r.gcd(&resultant_y(&sf, c)?).gcd(&resultant_y(&sg, c)?);
                r.squarefree()
                    .iter()
                    .map(|(factor, k)| k * factor.gcd(&g_base).degree().unwrap_or(0))
                    .sum()
            }
        };
        return Ok(OracleResult::Count {
            count: total - removed,
            resultant: r,
            shear,
            removed,
        });
    }
    Err(Error::Unsupported(
        "no shear makes the leading coefficients constant".into(),
    ))
}

/// `p(x + shear * y, y)`.
fn shear_poly(p: &MultiPoly<Rational>, shear: &Rational) -> MultiPoly<Rational> {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let z1 = &x + &y.scale(shear);
    let mut out = MultiPoly::zero(2);
    for (m, c) in p.terms() {
        let e = m.exponents();
        let term = &z1.pow(e[0]) * &y.pow(e[1]);
        out = &out + &term.scale(c);
    }
    out
}

/// The top power of `y` equals the total degree and has a constant coefficient.
fn leading_in_y_is_constant(p: &MultiPoly<Rational>) -> bool {
    let (Some(deg), Some(dy)) = (p.degree(), p.degree_in(1)) else {
        return false;
    };
    deg == dy
        && p
            .coeffs_in_var(1)
            .ok()
            .and_then(|c| c.last().cloned())
            .is_some_and(|c| c.is_constant() && !c.is_zero())
}

/// Sylvester resultant in `y` as a polynomial in `x`.
fn resultant_y(f: &MultiPoly<Rational>, g: &MultiPoly<Rational>) -> Result<UniPoly> {
    let a = f.coeffs_in_var(1)?;
    let b = g.coeffs_in_var(1)?;
    if a.is_empty() || b.is_empty() {
        return Ok(UniPoly::zero());
    }
    let (p, q) = (a.len() - 1, b.len() - 1);
    let size = p + q;
    if size == 0 {
        return Ok(UniPoly::one());
    }
    let zero = MultiPoly::zero(1);
    let entry = |i: usize, j: usize| -> MultiPoly<Rational> {
        if i < q {
            // f shifted right by i; highest power first
            j.checked_sub(i)
                .filter(|&k| k <= p)
                .map_or_else(|| zero.clone(), |k| a[p - k].clone())
        } else {
            let r = i - q;
            j.checked_sub(r)
                .filter(|&k| k <= q)
                .map_or_else(|| zero.clone(), |k| b[q - k].clone())
        }
    };
    let det = PolyMatrix::from_fn(size, size, 1, entry)?.determinant()?;
    Ok(UniPoly::from_multi(&det))
}
