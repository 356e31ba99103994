//! Decision procedures and obstructions for products of k-th powers.
//!
//! The complete two-power decision works in the free metabelian group: `w`
//! is a product of two k-th powers there exactly when some geometric-series
//! polynomial `1 + M + … + M^{k−1}` (for a monomial `M = X^nY^m`) divides
//! `W(w)`. The candidate monomials are bounded by the support widths of
//! `W(w)` because widths add under multiplication. The remaining operations
//! are necessary conditions: signed-area divisibility, the κ coloring test
//! for fourth powers, and the two planar Cayley-graph tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariant::{
    cyclic_cayley_invariant, klein_invariant, winding_invariant, word_from_polynomial,
};
use crate::laurent::{big, LPoly};
use crate::words::Word;

/// A verified solution of `w = a^k b^k` in the free metabelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPowersWitness {
    pub n: i64,
    pub m: i64,
    pub quotient: LPoly,
    pub a: Word,
    pub b: Word,
}

/// The geometric series `1 + M + … + M^{k−1}` for `M = X^nY^m`.
pub fn geometric_series(n: i64, m: i64, k: u32) -> LPoly {
    let mut p = LPoly::zero();
    for t in 0..k as i64 {
        p.add_term(n * t, m * t, big(1));
    }
    p
}

/// Candidate `(n, m)` pairs in deterministic order: `(0, 0)` first, then by
/// grade `|n| + |m|` with non-negative entries preferred.
fn candidates(width_x: i64, width_y: i64, k: u32) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 0)];
    if k < 2 {
        return out;
    }
    let bx = width_x / (k as i64 - 1);
    let by = width_y / (k as i64 - 1);
    let mut rest = Vec::new();
    for n in -bx..=bx {
        for m in -by..=by {
            if (n, m) != (0, 0) {
                rest.push((n, m));
            }
        }
    }
    rest.sort_by_key(|&(n, m)| (n.abs() + m.abs(), std::cmp::Reverse(n), std::cmp::Reverse(m)));
    out.extend(rest);
    out
}

/// Divisibility of `p` by `1 + M + … + M^{k−1}` with `M = X^nY^m`,
/// performed after a unimodular change mapping the primitive direction of
/// `(n, m)` to `(1, 0)`; returns the quotient in the original coordinates.
fn divide_by_geometric(p: &LPoly, n: i64, m: i64, k: u32) -> Result<Option<LPoly>> {
    debug_assert!((n, m) != (0, 0));
    let d = n.gcd(&m);
    let (pn, pm) = (n / d, m / d);
    // alpha*pn + beta*pm = 1; U = [[alpha, beta], [-pm, pn]] has det 1 and
    // sends (n, m) to (d, 0).
    let e = pn.extended_gcd(&pm);
    debug_assert_eq!(e.gcd, 1);
    let (alpha, beta) = (e.x, e.y);
    let u = [[alpha, beta], [-pm, pn]];
    let uinv = [[pn, -beta], [pm, alpha]];
    let transformed = p.unimodular_substitute(u)?;
    let divisor = geometric_series(d, 0, k);
    match transformed.exact_divide(&divisor)? {
        None => Ok(None),
        Some(q) => Ok(Some(q.unimodular_substitute(uinv)?)),
    }
}

/// Complete decision of `w = a^k b^k` in the free metabelian group.
///
/// Searches `(n, m) = (0, 0)` (divisor `k`) and all `(n, m)` with
/// `(k−1)·|n|` and `(k−1)·|m|` within the support widths of `W(w)`; on
/// success builds `b = x^{−n}y^{−m}`, `a = u b^{−1}` for a word `u`
/// realizing the quotient, and verifies `W(a^k b^k) = W(w)`.
pub fn two_kth_powers_decide(w: &Word, k: u32) -> Result<Option<TwoPowersWitness>> {
    if k < 1 {
        return Err(Error::InvalidParameter("power exponent must be >= 1".into()));
    }
    let p = winding_invariant(w)?;
    if p.is_zero() {
        return Ok(Some(TwoPowersWitness {
            n: 0,
            m: 0,
            quotient: LPoly::zero(),
            a: Word::empty(),
            b: Word::empty(),
        }));
    }
    let (wx, wy) = p.widths();
    for (n, m) in candidates(wx, wy, k) {
        let quotient = if (n, m) == (0, 0) {
            p.divide_by_int(&big(k as i64))
        } else {
            divide_by_geometric(&p, n, m, k)?
        };
        let Some(q) = quotient else { continue };
        let u = word_from_polynomial(&q);
        let b = Word::x_pow(-n).concat(&Word::y_pow(-m));
        let a = u.concat(&b.inverse());
        let realized = a.pow(k as i64).concat(&b.pow(k as i64));
        let check = winding_invariant(&realized)?;
        assert_eq!(check, p, "two-power witness failed self-verification");
        return Ok(Some(TwoPowersWitness { n, m, quotient: q, a, b }));
    }
    Ok(None)
}

/// Necessary condition for `w` to be a product of k-th powers: `k` divides
/// the signed area when `k` is odd, `k/2` divides it when `k` is even.
pub fn power_area_test(w: &Word, k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter("power exponent must be >= 2".into()));
    }
    let area = winding_invariant(w)?.area();
    let modulus = if k % 2 == 1 { big(k as i64) } else { big(k as i64 / 2) };
    Ok((area % modulus).is_zero())
}

/// Complete decision in the free group: `z` is a product of cubes iff both
/// exponent sums are divisible by 3 and so is the signed area of
/// `y^{−l} x^{−k} z`.
pub fn cube_product_decide(z: &Word) -> Result<bool> {
    let (k, l) = z.exponent_vector();
    if k % 3 != 0 || l % 3 != 0 {
        return Ok(false);
    }
    let shifted = Word::y_pow(-l).concat(&Word::x_pow(-k)).concat(z);
    let area = winding_invariant(&shifted)?.area();
    Ok((area % big(3)).is_zero())
}

/// Necessary condition for a product of fourth powers: `4 | κ(w)`.
pub fn fourth_power_kappa_test(w: &Word) -> Result<bool> {
    let kappa = winding_invariant(w)?.kappa();
    Ok((kappa % big(4)).is_zero())
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Necessary condition for `w = a^p b^p` via the cyclic planar invariant:
/// applicable when `p² | exp_x(w)`; passes unless the invariant is neither
/// a multiple of `p` nor of `1 + g + … + g^{p−1}`.
pub fn two_pth_powers_cyclic_test(w: &Word, p: u32) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let ex = w.exp_x();
    if ex % (p as i64 * p as i64) != 0 {
        return Err(Error::InapplicableTest(format!(
            "requires {p}² to divide exp_x = {ex}"
        )));
    }
    let alpha = cyclic_cayley_invariant(w, p as i64)?;
    Ok(alpha.is_multiple_of_int(p as i64) || alpha.is_multiple_of_norm())
}

/// Necessary condition for `w = a² b²` via the Klein-four planar invariant:
/// applicable when `4 | exp_x(w)` and `4 | exp_y(w)`; fails exactly when
/// the invariant is odd.
pub fn two_squares_klein_test(w: &Word) -> Result<bool> {
    let (ex, ey) = w.exponent_vector();
    if ex % 4 != 0 || ey % 4 != 0 {
        return Err(Error::InapplicableTest(
            "requires 4 | exp_x and 4 | exp_y".into(),
        ));
    }
    Ok(klein_invariant(w)?.rem_euclid(2) == 0)
}

/// A constructive triple `(b₁, b₂, b₃)` with
/// `W(b₁^p b₂^p b₃^p) = W(e_{p+1})`: the Engel word `e_{p+1}` is a product
/// of three p-th powers in the free metabelian group.
pub fn engel_pth_decomposition(p: u32) -> Result<(Word, Word, Word)> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let triple = if p == 2 {
        // W = −1 + 2Y − Y²: the squares of y[x,y]y⁻¹, y², y⁻¹xy⁻¹x⁻¹.
        (
            Word::y()
                .concat(&Word::commutator(&Word::x(), &Word::y()))
                .concat(&Word::y_pow(-1)),
            Word::y_pow(2),
            Word::parse("YxYX").unwrap(),
        )
    } else {
        // (1−Y)^p = 1 − Y^p + p·Q with Q integral; b₂^p b₃^p realizes 1 − Y^p.
        let one_minus_y_p = {
            let mut acc = LPoly::one();
            let f = LPoly::parse("1 - Y").unwrap();
            for _ in 0..p {
                acc = &acc * &f;
            }
            acc
        };
        let residual = &(&one_minus_y_p - &LPoly::one()) + &LPoly::monomial(0, p as i64);
        let q = residual
            .divide_by_int(&big(p as i64))
            .expect("binomial coefficients of a prime power are divisible by it");
        (
            word_from_polynomial(&q),
            Word::parse("xyX").unwrap(),
            Word::parse("yxYXY").unwrap(),
        )
    };
    let (b1, b2, b3) = &triple;
    let product = b1
        .pow(p as i64)
        .concat(&b2.pow(p as i64))
        .concat(&b3.pow(p as i64));
    let target = Word::engel(p + 1)?;
    assert_eq!(
        winding_invariant(&product)?,
        winding_invariant(&target)?,
        "engel p-th power decomposition failed self-verification"
    );
    Ok(triple)
}

/// Divisibility of a `BigInt` by a machine integer.
pub fn divides(d: i64, n: &BigInt) -> bool {
    (n % big(d)).is_zero()
}
