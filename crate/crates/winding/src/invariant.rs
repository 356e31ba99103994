//! The winding invariant and its relatives.
//!
//! A word `w` over `{x, y}` traces a lattice curve from the origin: `x`
//! moves one unit right, `y` one unit up, inverses the other way. When the
//! exponent sums vanish the curve is closed and its winding numbers around
//! the cell centers `(i + 1/2, j + 1/2)` are the coefficients of a Laurent
//! polynomial. The resulting map `W` from the derived subgroup to the
//! Laurent ring is a surjective homomorphism whose kernel is the second
//! derived subgroup, so equalities of invariants are exactly equalities in
//! the free metabelian group of rank 2.
//!
//! Winding numbers are computed by signed vertical-edge crossings of a
//! rightward ray, with counterclockwise traversal counted positively; no
//! floating point is involved.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::laurent::{big, LPoly};
use crate::words::{Endomorphism, Gen, Word};

fn require_derived(w: &Word) -> Result<()> {
    let (ex, ey) = w.exponent_vector();
    if (ex, ey) != (0, 0) {
        return Err(Error::NonZeroExponents { exp_x: ex, exp_y: ey });
    }
    Ok(())
}

/// The winding invariant `W(w)` of a word in the derived subgroup.
///
/// Coefficient of `X^i Y^j` = winding number of the curve of `w` around
/// `(i + 1/2, j + 1/2)`; computed per row by right-to-left prefix sums of
/// the signed vertical-edge traversals.
pub fn winding_invariant(w: &Word) -> Result<LPoly> {
    require_derived(w)?;
    // row j -> (x-position k -> signed crossing count)
    let mut rows: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    let (mut x, mut y) = (0i64, 0i64);
    for &(g, e) in w.runs() {
        match g {
            Gen::X => x += e,
            Gen::Y => {
                let (lo, hi, s) = if e > 0 { (y, y + e, 1) } else { (y + e, y, -1) };
                for r in lo..hi {
                    let slot = rows.entry(r).or_default().entry(x).or_insert(0);
                    *slot += s;
                    if *slot == 0 {
                        rows.get_mut(&r).unwrap().remove(&x);
                    }
                }
                y += e;
            }
        }
    }
    let mut p = LPoly::zero();
    for (row, crossings) in rows {
        let ks: Vec<(i64, i64)> = crossings.into_iter().collect();
        // a_{i,row} = sum of signs over crossings with k > i.
        let mut suffix = 0i64;
        for idx in (0..ks.len()).rev() {
            let (k, s) = ks[idx];
            suffix += s;
            let lower = if idx == 0 { k } else { ks[idx - 1].0 };
            if suffix != 0 {
                // cells between consecutive crossing columns share the sum
                for i in lower..k {
                    p.add_term(i, row, big(suffix));
                }
            }
        }
        debug_assert_eq!(suffix, 0, "closed curve rows must balance");
    }
    Ok(p)
}

/// A word realizing a given invariant: the product of `x^n y^m [x,y]^c y^{-m} x^{-n}`
/// over the terms `c·X^nY^m` in graded-lex order.
pub fn word_from_polynomial(p: &LPoly) -> Word {
    let mut terms: Vec<((i64, i64), BigInt)> = p.terms().map(|(k, c)| (k, c.clone())).collect();
    terms.sort_by_key(|&((i, j), _)| (i + j, i, j));
    let mut w = Word::empty();
    for ((i, j), c) in terms {
        let c: i64 = c.try_into().expect("coefficient too large to realize as a word");
        w = w.concat(&Word::conj_gen(i, j, c));
    }
    debug_assert_eq!(winding_invariant(&w).unwrap(), *p);
    w
}

/// Abelianized left Fox derivatives `(∂w/∂x, ∂w/∂y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxPair {
    pub dx: LPoly,
    pub dy: LPoly,
}

impl FoxPair {
    /// The fundamental identity `dx·(X−1) + dy·(Y−1) = m_w − 1`.
    pub fn fundamental_identity_holds(&self, w: &Word) -> bool {
        let (ex, ey) = w.exponent_vector();
        let lhs = &(&self.dx * &LPoly::parse("X - 1").unwrap())
            + &(&self.dy * &LPoly::parse("Y - 1").unwrap());
        let rhs = &LPoly::monomial(ex, ey) - &LPoly::one();
        lhs == rhs
    }
}

/// Left Fox derivatives with `∂(uv) = ∂u + ū·∂v`, abelianized.
pub fn fox_pair(w: &Word) -> FoxPair {
    let mut dx = LPoly::zero();
    let mut dy = LPoly::zero();
    let (mut a, mut b) = (0i64, 0i64);
    for (g, s) in w.letters() {
        match (g, s > 0) {
            (Gen::X, true) => {
                dx.add_term(a, b, big(1));
                a += 1;
            }
            (Gen::X, false) => {
                a -= 1;
                dx.add_term(a, b, big(-1));
            }
            (Gen::Y, true) => {
                dy.add_term(a, b, big(1));
                b += 1;
            }
            (Gen::Y, false) => {
                b -= 1;
                dy.add_term(a, b, big(-1));
            }
        }
    }
    FoxPair { dx, dy }
}

/// The monomial unit linking `fox_pair` to the winding invariant:
/// `fox_pair([x,y]).dx / ((1 − Y⁻¹) X⁻¹)`.
///
/// For every `w` in the derived subgroup,
/// `fox_pair(w).dx = W(w) · (1 − Y⁻¹) X⁻¹ · unit`.
pub fn fox_convention_unit() -> LPoly {
    let dx = fox_pair(&Word::commutator(&Word::x(), &Word::y())).dx;
    let conv = LPoly::parse("X^-1 - X^-1*Y^-1").unwrap();
    dx.exact_divide(&conv)
        .expect("convention divisor has unit leading coefficient")
        .expect("Fox convention unit must exist")
}

/// The signed row-coloring sum: rows `0, 1 mod 4` of `W(w)` count
/// positively, rows `2, 3 mod 4` negatively.
pub fn kappa(w: &Word) -> Result<BigInt> {
    Ok(winding_invariant(w)?.kappa())
}

/// An element of the group ring of the cyclic group of order `k`; index
/// `i` holds the coefficient of `g^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicVector {
    pub k: usize,
    pub coeffs: Vec<i64>,
}

impl CyclicVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether every coefficient is divisible by `p`.
    pub fn is_multiple_of_int(&self, p: i64) -> bool {
        self.coeffs.iter().all(|&c| c % p == 0)
    }

    /// Whether the vector is a multiple of `1 + g + … + g^{k−1}`, i.e.
    /// constant.
    pub fn is_multiple_of_norm(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }
}

/// The planar Cayley-graph invariant over the cyclic group of order `k`:
/// writing `w = x^{n_1} y^{m_1} … x^{n_s} y^{m_s}`, the coefficient of
/// `g^r` is the sum of `m_i` over the prefixes with `n_1 + … + n_i ≡ r`.
pub fn cyclic_cayley_invariant(w: &Word, k: i64) -> Result<CyclicVector> {
    if k < 1 {
        return Err(Error::InvalidParameter("cyclic order must be >= 1".into()));
    }
    let mut coeffs = vec![0i64; k as usize];
    let mut cum_x = 0i64;
    for &(g, e) in w.runs() {
        match g {
            Gen::X => cum_x += e,
            Gen::Y => coeffs[cum_x.rem_euclid(k) as usize] += e,
        }
    }
    Ok(CyclicVector { k: k as usize, coeffs })
}

/// The Klein-four planar invariant: project to the free product of two
/// order-2 groups and read `± length / 4` off the reduced image, positive
/// when it starts with `x`.
///
/// Requires both exponent sums even; the reduced image length is then
/// always a multiple of 4.
pub fn klein_invariant(w: &Word) -> Result<i64> {
    let (ex, ey) = w.exponent_vector();
    if ex % 2 != 0 || ey % 2 != 0 {
        return Err(Error::OddExponents);
    }
    let mut stack: Vec<Gen> = Vec::new();
    for &(g, e) in w.runs() {
        if e % 2 != 0 {
            if stack.last() == Some(&g) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
    }
    if stack.is_empty() {
        return Ok(0);
    }
    let l = stack.len() as i64;
    assert!(l % 4 == 0, "reduced image length must be a multiple of 4");
    Ok(match stack[0] {
        Gen::X => l / 4,
        Gen::Y => -(l / 4),
    })
}

/// `W(φ(w))` in terms of `W(w)`: the induced monomial substitution of the
/// abelianized matrix applied to `W(w)`, times `W(φ([x,y]))`.
pub fn endomorphism_action(phi: &Endomorphism, p: &LPoly) -> Result<LPoly> {
    let m = phi.abelianized();
    let factor = winding_invariant(&phi.apply(&Word::commutator(&Word::x(), &Word::y())))?;
    let substituted = p.monomial_substitute((m[0][0], m[1][0]), (m[0][1], m[1][1]));
    Ok(&factor * &substituted)
}

/// Signed area of a word in the derived subgroup: `W(w)(1,1)`.
pub fn signed_area(w: &Word) -> Result<BigInt> {
    Ok(winding_invariant(w)?.area())
}

/// Whether a polynomial is `±X^aY^b`.
pub fn is_monomial_unit(p: &LPoly) -> bool {
    p.num_terms() == 1 && p.terms().next().map(|(_, c)| c.abs() == big(1)) == Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(s: &str) -> LPoly {
        LPoly::parse(s).unwrap()
    }

    fn wi(s: &str) -> LPoly {
        winding_invariant(&w(s)).unwrap()
    }

    #[test]
    fn figure_values() {
        assert_eq!(wi("xyXY"), LPoly::one());
        assert_eq!(wi("x^3yX^2Y^2XyxYXy"), p("X + X^2 - 2*Y^-1"));
    }

    #[test]
    fn rejects_nonzero_exponents() {
        assert!(matches!(
            winding_invariant(&w("xy")),
            Err(Error::NonZeroExponents { .. })
        ));
    }

    #[test]
    fn engel_invariants() {
        for n in 1..=6u32 {
            let e = Word::engel(n).unwrap();
            let mut expected = LPoly::constant(-1);
            for _ in 1..n {
                expected = &expected * &p("Y - 1");
            }
            assert_eq!(winding_invariant(&e).unwrap(), expected, "engel({n})");
        }
    }

    #[test]
    fn staircase_invariant() {
        let m = 5i64;
        let word = Word::x_pow(m)
            .concat(&Word::y_pow(m))
            .concat(&w("XY").pow(m));
        let mut expected = LPoly::zero();
        for i in 0..m {
            for t in 0..(m - i) {
                expected.add_term(i + t, i, big(1));
            }
        }
        assert_eq!(winding_invariant(&word).unwrap(), expected);
    }

    #[test]
    fn basic_chain_invariant() {
        for (l, s) in [(0, 0), (1, 1), (2, 1), (0, 3)] {
            let v = Word::basic_chain(l, s);
            let expected = LPoly::xy_shift_power(l, s);
            assert_eq!(winding_invariant(&v).unwrap(), expected, "({l},{s})");
        }
    }

    #[test]
    fn word_from_polynomial_round_trip() {
        for s in ["0", "1", "X^2*Y^3", "3 - X + 2*X^-1*Y^-2"] {
            let q = p(s);
            let word = word_from_polynomial(&q);
            assert_eq!(winding_invariant(&word).unwrap(), q, "{s}");
        }
        assert_eq!(word_from_polynomial(&LPoly::one()), w("xyXY"));
        assert_eq!(word_from_polynomial(&LPoly::zero()), Word::empty());
        assert_eq!(
            word_from_polynomial(&p("X^2*Y^3")),
            Word::conj_gen(2, 3, 1)
        );
    }

    #[test]
    fn fox_basics() {
        let fp = fox_pair(&Word::x());
        assert_eq!(fp.dx, LPoly::one());
        assert_eq!(fp.dy, LPoly::zero());
        assert!(fp.fundamental_identity_holds(&Word::x()));

        let c = fox_pair(&w("xyXY"));
        assert_eq!(c.dx.num_terms(), 2); // 1 − Y
        assert_eq!(c.dx, p("1 - Y"));
        assert_eq!(c.dy, p("X - 1"));
        assert!(c.fundamental_identity_holds(&w("xyXY")));
    }

    #[test]
    fn fox_convention_unit_is_monomial() {
        let u = fox_convention_unit();
        assert!(is_monomial_unit(&u), "unit was {u}");
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&Word::engel(3).unwrap()).unwrap(), big(2));
        assert_eq!(kappa(&w("xyXY")).unwrap(), big(1));
        assert_eq!(kappa(&Word::engel(5).unwrap()).unwrap(), big(4));
    }

    #[test]
    fn cyclic_invariant_examples() {
        let v = cyclic_cayley_invariant(&w("x^7yxY^2xy^4"), 3).unwrap();
        assert_eq!(v.coeffs, vec![4, 1, -2]);
        let v = cyclic_cayley_invariant(&Word::y(), 5).unwrap();
        assert_eq!(v.coeffs, vec![1, 0, 0, 0, 0]);
        let v = cyclic_cayley_invariant(&Word::x(), 4).unwrap();
        assert!(v.is_zero());
        assert!(cyclic_cayley_invariant(&Word::x(), 0).is_err());
    }

    #[test]
    fn klein_examples() {
        assert_eq!(klein_invariant(&w("xyXY")).unwrap(), 1);
        assert_eq!(klein_invariant(&w("x^2yXY^2x^4yx")).unwrap(), -1);
        assert_eq!(klein_invariant(&w("x^2")).unwrap(), 0);
        assert_eq!(klein_invariant(&w("xyXY").pow(2)).unwrap(), 2);
        assert!(matches!(klein_invariant(&w("x")), Err(Error::OddExponents)));
    }

    #[test]
    fn homomorphism_and_conjugation() {
        let a = w("xyXY");
        let b = w("x^2yX^2Y");
        let ab = a.concat(&b);
        assert_eq!(
            winding_invariant(&ab).unwrap(),
            &wi("xyXY") + &winding_invariant(&b).unwrap()
        );
        assert_eq!(
            winding_invariant(&a.inverse()).unwrap(),
            wi("xyXY").neg_ref()
        );
        let u = w("x^2Y");
        let conj = u.concat(&a).concat(&u.inverse());
        assert_eq!(
            winding_invariant(&conj).unwrap(),
            wi("xyXY").mul_monomial(2, -1)
        );
    }
}
