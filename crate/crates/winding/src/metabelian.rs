//! Constructive length results in the free metabelian group of rank 2.
//!
//! Equality in that group is decidable: two words are equal exactly when
//! their exponent vectors agree and the winding invariant of their
//! difference vanishes. The decompositions here (two commutators for any
//! derived-subgroup element, three squares for odd area or the right
//! residue class, five squares for any product of squares) are built by
//! exact Euclidean reduction in the Laurent ring and each output is
//! re-verified against its target before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::commutators::Lattice;
use crate::error::{Error, Result};
use crate::invariant::{winding_invariant, word_from_polynomial};
use crate::laurent::{big, LPoly};
use crate::powers::two_kth_powers_decide;
use crate::words::Word;

/// Equality in the free metabelian group: equal exponent vectors and
/// vanishing invariant of the quotient.
pub fn metabelian_eq(a: &Word, b: &Word) -> bool {
    if a.exponent_vector() != b.exponent_vector() {
        return false;
    }
    winding_invariant(&a.concat(&b.inverse()))
        .map(|p| p.is_zero())
        .unwrap_or(false)
}

/// Writes `r = (X−1)·A + (Y−1)·B + c` with `c = r(1,1)`, exactly in the
/// Laurent ring: division by `X−1` proceeds per monomial, the remainder is
/// the evaluation at `X = 1`.
pub fn reduce_mod_augmentation(r: &LPoly) -> (LPoly, LPoly, BigInt) {
    let mut a = LPoly::zero();
    let mut rest = LPoly::zero(); // r with X set to 1
    for ((i, j), c) in r.terms() {
        // c X^i Y^j − c Y^j = c Y^j (X−1) σ_i(X)
        if i > 0 {
            for t in 0..i {
                a.add_term(t, j, c.clone());
            }
        } else if i < 0 {
            for t in i..0 {
                a.add_term(t, j, -c.clone());
            }
        }
        rest.add_term(0, j, c.clone());
    }
    let mut b = LPoly::zero();
    let mut constant = BigInt::zero();
    for ((_, j), c) in rest.terms() {
        if j > 0 {
            for t in 0..j {
                b.add_term(0, t, c.clone());
            }
        } else if j < 0 {
            for t in j..0 {
                b.add_term(0, t, -c.clone());
            }
        }
        constant += c;
    }
    (a, b, constant)
}

/// Writes `r = (X²−1)·A + (Y−1)·B + e₀ + e₁·X`, exactly.
fn reduce_mod_x2(r: &LPoly) -> (LPoly, LPoly, BigInt, BigInt) {
    let mut a = LPoly::zero();
    let mut rest = LPoly::zero(); // X-degrees folded into {0, 1}
    for ((i, j), c) in r.terms() {
        let parity = i.rem_euclid(2);
        // c X^i = c X^parity + c (X² − 1) σ(X²) with σ a geometric sum
        let steps = (i - parity) / 2;
        if steps > 0 {
            for t in 0..steps {
                a.add_term(parity + 2 * t, j, c.clone());
            }
        } else if steps < 0 {
            for t in steps..0 {
                a.add_term(parity + 2 * t, j, -c.clone());
            }
        }
        rest.add_term(parity, j, c.clone());
    }
    let mut b = LPoly::zero();
    let mut e0 = BigInt::zero();
    let mut e1 = BigInt::zero();
    for ((i, j), c) in rest.terms() {
        if j > 0 {
            for t in 0..j {
                b.add_term(i, t, c.clone());
            }
        } else if j < 0 {
            for t in j..0 {
                b.add_term(i, t, -c.clone());
            }
        }
        if i == 0 {
            e0 += c;
        } else {
            e1 += c;
        }
    }
    (a, b, e0, e1)
}

/// Two commutators whose invariants sum to a prescribed polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cl2Decomposition {
    pub c1: (Word, Word),
    pub c2: (Word, Word),
}

impl Cl2Decomposition {
    pub fn commutator_product(&self) -> Word {
        Word::commutator(&self.c1.0, &self.c1.1)
            .concat(&Word::commutator(&self.c2.0, &self.c2.1))
    }
}

/// Constructive commutator length ≤ 2: any Laurent polynomial is
/// `W([a₁,b₁]) + W([a₂,b₂])`.
///
/// With `k = P(1,1)`, the difference `P − W([x, y^k])` reduces to
/// `(1−X)Q₁ + (1−Y)Q₂`, realized by `[w₁y^{−k}, y^k x y^{−k}]` and
/// `[w₂, y]`; the sum of the two invariants is re-verified.
pub fn cl2_decomposition(p: &LPoly) -> Cl2Decomposition {
    let k: i64 = p.area().try_into().expect("area too large for a word power");
    let base = Word::commutator(&Word::x(), &Word::y_pow(k));
    let base_inv = winding_invariant(&base).unwrap();
    let (a, b, c) = reduce_mod_augmentation(&(p - &base_inv));
    debug_assert!(c.is_zero());
    // P − W([x, y^k]) = (X−1)A + (Y−1)B; the construction uses (1−X)Q₁.
    let q1 = a.neg_ref();
    let q2 = b.neg_ref();
    let w1 = word_from_polynomial(&q1);
    let w2 = word_from_polynomial(&q2);
    let yk = Word::y_pow(k);
    let c1 = (
        w1.concat(&yk.inverse()),
        yk.concat(&Word::x()).concat(&yk.inverse()),
    );
    let c2 = (w2, Word::y());
    let out = Cl2Decomposition { c1, c2 };
    let total = winding_invariant(&out.commutator_product()).unwrap();
    assert_eq!(total, *p, "cl2 decomposition failed self-verification");
    out
}

/// Outcome of the partial three-squares decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeSquares {
    Decomposed(Word, Word, Word),
    Obstructed,
    Unknown,
}

/// A verified product-of-squares decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub factors: Vec<Word>,
    pub target: Word,
}

impl SquareDecomposition {
    pub fn squares_product(&self) -> Word {
        let mut w = Word::empty();
        for f in &self.factors {
            w = w.concat(&f.pow(2));
        }
        w
    }

    pub fn verify(&self) -> bool {
        metabelian_eq(&self.squares_product(), &self.target)
    }
}

fn three_squares_construct(p_a: &LPoly, p_c: &LPoly, p_d: &LPoly, x_power: i64) -> (Word, Word, Word) {
    let a = word_from_polynomial(p_a);
    let c = word_from_polynomial(p_c);
    let d = word_from_polynomial(p_d);
    let v = c.inverse().concat(&Word::x_pow(-x_power));
    let w = d.inverse().concat(&Word::y_pow(-1));
    let u = a.concat(&w.inverse()).concat(&v.inverse());
    (u, v, w)
}

/// Partial decision for products of three squares in the free metabelian
/// group.
///
/// Odd signed area always decomposes; even area with residue `1 + X`
/// modulo `⟨2, Y−1, X²−1⟩` decomposes through the `x²`-shaped square;
/// otherwise the coset-parity obstruction runs: a product of three squares
/// forces either a finite-index lattice with all coset sums odd or a rank
/// ≤ 1 lattice with all line-coset sums even.
pub fn three_squares_decide_partial(z: &Word) -> Result<ThreeSquares> {
    let p = winding_invariant(z)?;
    let area = p.area();
    if area.mod_floor(&big(2)) == big(1) {
        // Step: P − Y = (X−1)A + (Y−1)B + 2t
        let r = &p - &LPoly::monomial(0, 1);
        let (a, b, c2) = reduce_mod_augmentation(&r);
        let t = c2.div_floor(&big(2));
        debug_assert!((&c2 - big(2) * &t).is_zero());
        let tp = LPoly::term(0, 0, t);
        // P_c = −(B − tX) X⁻¹Y⁻¹, P_d = (A − t) Y⁻²
        let p_c = (&b - &tp.mul_monomial(1, 0)).neg_ref().mul_monomial(-1, -1);
        let p_d = (&a - &tp).mul_monomial(0, -2);
        let (u, v, w) = three_squares_construct(&tp, &p_c, &p_d, 1);
        let prod = u.pow(2).concat(&v.pow(2)).concat(&w.pow(2));
        assert_eq!(
            winding_invariant(&prod)?,
            p,
            "three-squares decomposition failed self-verification"
        );
        return Ok(ThreeSquares::Decomposed(u, v, w));
    }
    if p.residue_mod_two_x2() == (1, 1) {
        // Step: P − Y − XY = (X²−1)A + (Y−1)B + 2t with t = t₀ + t₁X
        let r = &(&p - &LPoly::monomial(0, 1)) - &LPoly::monomial(1, 1);
        let (a, b, e0, e1) = reduce_mod_x2(&r);
        debug_assert!(e0.mod_floor(&big(2)).is_zero());
        debug_assert!(e1.mod_floor(&big(2)).is_zero());
        let mut tp = LPoly::zero();
        tp.add_term(0, 0, e0.div_floor(&big(2)));
        tp.add_term(1, 0, e1.div_floor(&big(2)));
        let p_c = (&b - &tp.mul_monomial(2, 0)).neg_ref().mul_monomial(-2, -1);
        let p_d = (&a - &tp).mul_monomial(0, -2);
        let (u, v, w) = three_squares_construct(&tp, &p_c, &p_d, 2);
        let prod = u.pow(2).concat(&v.pow(2)).concat(&w.pow(2));
        assert_eq!(
            winding_invariant(&prod)?,
            p,
            "three-squares decomposition failed self-verification"
        );
        return Ok(ThreeSquares::Decomposed(u, v, w));
    }
    // Parity obstruction: collect the cells with odd coefficient.
    let odd_cells: Vec<(i64, i64)> = p
        .terms()
        .filter(|(_, c)| c.mod_floor(&big(2)) == big(1))
        .map(|(k, _)| k)
        .collect();
    // rank ≤ 1 certificate: all line-coset sums even
    if odd_cells.is_empty() {
        return Ok(ThreeSquares::Unknown); // L = 0 works: all singleton sums even
    }
    let mut points = odd_cells.clone();
    points.sort_unstable();
    for gen in crate::commutators::line_candidate_directions(&points) {
        let l = Lattice::Rank1 { gen };
        if l.support_coset_sums(&p)
            .values()
            .all(|s| s.mod_floor(&big(2)).is_zero())
        {
            return Ok(ThreeSquares::Unknown);
        }
    }
    // rank 2 certificate: all coset sums odd; index bounded by #odd cells
    for index in 1..=odd_cells.len() as i64 {
        for l in Lattice::enumerate_index(index) {
            let sums = l.support_coset_sums(&p);
            if sums.len() as i64 == index
                && sums.values().all(|s| s.mod_floor(&big(2)) == big(1))
            {
                return Ok(ThreeSquares::Unknown);
            }
        }
    }
    Ok(ThreeSquares::Obstructed)
}

/// Five squares for any element with even exponent sums, in the free
/// metabelian group; output verified against the target.
pub fn five_squares_decompose(r: &Word) -> Result<SquareDecomposition> {
    let (ex, ey) = r.exponent_vector();
    if ex % 2 != 0 || ey % 2 != 0 {
        return Err(Error::OddExponents);
    }
    let (k, l) = (ex / 2, ey / 2);
    let lead = Word::x_pow(k + 1).concat(&Word::y_pow(l));
    // r = lead² x⁻² z
    let z = Word::x_pow(2)
        .concat(&lead.pow(2).inverse())
        .concat(r);
    debug_assert!(z.in_derived_subgroup());
    let p_z = winding_invariant(&z)?;
    let area_odd = p_z.area().mod_floor(&big(2)) == big(1);
    let factors: Vec<Word> = if area_odd || p_z.residue_mod_two_x2() == (1, 1) {
        match three_squares_decide_partial(&z)? {
            ThreeSquares::Decomposed(u, v, w) => {
                vec![lead.clone(), Word::x_pow(-1), u, v, w]
            }
            _ => unreachable!("odd area or residue 1+X always decomposes"),
        }
    } else {
        // residue 0: switch to z' = [x,y] x [x,y] x⁻¹ z with residue 1 + X
        let comm = Word::commutator(&Word::x(), &Word::y());
        let zp = comm
            .concat(&Word::x())
            .concat(&comm)
            .concat(&Word::x_pow(-1))
            .concat(&z);
        match three_squares_decide_partial(&zp)? {
            ThreeSquares::Decomposed(u, v, w) => {
                vec![lead.clone(), Word::parse("XyxYX").unwrap(), u, v, w]
            }
            _ => unreachable!("residue 1+X always decomposes"),
        }
    };
    let out = SquareDecomposition { factors, target: r.clone() };
    assert!(out.verify(), "five-squares decomposition failed self-verification");
    Ok(out)
}

/// Interval `(lo, hi)` bounding the square length of `r` in the free
/// metabelian group.
///
/// `hi` comes from achieved decompositions (0 trivial, 2 via the two-power
/// decision when `r` is in the derived subgroup, 3 via the partial
/// three-squares decision, 5 always); `lo` from obstructions (3 when the
/// two-power decision is empty, 4 when three squares are obstructed). The
/// interval is honest: the exact width of the gap is not decided here.
pub fn square_length_bounds(r: &Word) -> Result<(u32, u32)> {
    let (ex, ey) = r.exponent_vector();
    if ex % 2 != 0 || ey % 2 != 0 {
        return Err(Error::NotProductOfSquares);
    }
    if (ex, ey) == (0, 0) && winding_invariant(r)?.is_zero() {
        return Ok((0, 0));
    }
    let mut lo = 1u32;
    let mut hi = 5u32;
    if r.in_derived_subgroup() {
        match three_squares_decide_partial(r)? {
            ThreeSquares::Decomposed(..) => hi = hi.min(3),
            ThreeSquares::Obstructed => lo = lo.max(4),
            ThreeSquares::Unknown => {}
        }
        if two_kth_powers_decide(r, 2)?.is_some() {
            hi = hi.min(2);
        } else {
            lo = lo.max(3);
        }
    }
    assert!(lo <= hi);
    Ok((lo, hi))
}

/// Obstruction for membership in the verbal subgroup of the n-th Engel
/// word in the free metabelian group: for `n ≥ 3`, every member has
/// `(n−1)!` dividing `(n−2)! · a_{n−2,1}` (normalized Taylor), i.e.
/// `(n−1) | a_{n−2,1}`. Returns `true` when the obstruction fires.
///
/// For `n = 1, 2` the verbal subgroup coincides with the corresponding
/// lower-central term, so no obstruction exists and the result is `false`.
pub fn engel_verbal_obstruction(w: &Word, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidParameter("engel index must be >= 1".into()));
    }
    let p = winding_invariant(w)?;
    if n < 3 {
        return Ok(false);
    }
    let a = p.taylor_coefficient(n - 2, 1);
    Ok(!(a % big(n as i64 - 1)).is_zero())
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

    #[test]
    fn augmentation_reduction_is_exact() {
        for s in ["3 - X", "X^2*Y^-1 + 4", "7", "Y - X + X^-3*Y^-2"] {
            let r = p(s);
            let (a, b, c) = reduce_mod_augmentation(&r);
            let back = &(&(&p("X - 1") * &a) + &(&p("Y - 1") * &b)) + &LPoly::term(0, 0, c);
            assert_eq!(back, r, "{s}");
        }
    }

    #[test]
    fn x2_reduction_is_exact() {
        for s in ["1 + X", "X^3*Y^-1 + 4*X^-2", "X - Y"] {
            let r = p(s);
            let (a, b, e0, e1) = reduce_mod_x2(&r);
            let back = &(&(&p("X^2 - 1") * &a) + &(&p("Y - 1") * &b))
                + &(&LPoly::term(0, 0, e0) + &LPoly::term(1, 0, e1));
            assert_eq!(back, r, "{s}");
        }
    }

    #[test]
    fn cl2_examples() {
        for s in ["4", "X^2*Y", "3 - X", "1"] {
            let q = p(s);
            let d = cl2_decomposition(&q);
            assert_eq!(winding_invariant(&d.commutator_product()).unwrap(), q);
        }
    }

    #[test]
    fn three_squares_odd_area() {
        let z = w("xyXY");
        match three_squares_decide_partial(&z).unwrap() {
            ThreeSquares::Decomposed(u, v, ww) => {
                let prod = u.pow(2).concat(&v.pow(2)).concat(&ww.pow(2));
                assert!(metabelian_eq(&prod, &z));
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn three_squares_residue_case() {
        let z = crate::invariant::word_from_polynomial(&p("1 + X"));
        assert!(matches!(
            three_squares_decide_partial(&z).unwrap(),
            ThreeSquares::Decomposed(..)
        ));
    }

    #[test]
    fn three_squares_obstructed_example() {
        let q = p("X^-2*Y^-2 + X^2*Y^2 + X^-1 + X + X^-1*Y + X*Y^-1");
        let z = crate::invariant::word_from_polynomial(&q);
        assert_eq!(
            three_squares_decide_partial(&z).unwrap(),
            ThreeSquares::Obstructed
        );
    }

    #[test]
    fn five_squares_examples() {
        for s in ["x^2y^2", "xyXY", "x^4", "x^2YxyX^3y^2"] {
            let r = w(s);
            let d = five_squares_decompose(&r).unwrap();
            assert_eq!(d.factors.len(), 5);
            assert!(d.verify(), "{s}");
        }
        assert!(five_squares_decompose(&w("x")).is_err());
    }

    #[test]
    fn square_length_examples() {
        assert_eq!(square_length_bounds(&w("xyXY")).unwrap(), (3, 3));
        assert_eq!(square_length_bounds(&Word::empty()).unwrap(), (0, 0));
        let q = p("X^-2*Y^-2 + X^2*Y^2 + X^-1 + X + X^-1*Y + X*Y^-1");
        let z = crate::invariant::word_from_polynomial(&q);
        assert_eq!(square_length_bounds(&z).unwrap(), (4, 5));
        assert!(square_length_bounds(&w("x")).is_err());
    }

    #[test]
    fn engel_verbal_examples() {
        // W = (X−1)^{n−2}(Y−1) is obstructed for n = 3
        let target = Word::simple_commutator(&[Word::x(), Word::y(), Word::x(), Word::y()]);
        assert_eq!(
            winding_invariant(&target).unwrap(),
            &p("X - 1") * &p("Y - 1")
        );
        assert!(engel_verbal_obstruction(&target, 3).unwrap());
        assert!(!engel_verbal_obstruction(&w("xyXY"), 1).unwrap());
        // genuine e_3-elements pass
        let u = w("xY");
        let v = w("yx^2");
        let elt = Word::simple_commutator(&[u.clone(), u.clone(), u.clone(), v]);
        assert!(!engel_verbal_obstruction(&elt, 3).unwrap());
    }

    #[test]
    fn metabelian_eq_detects_second_derived() {
        let f = w("xyXY");
        let g = w("x^2yX^2Y");
        let c = Word::commutator(&f, &g); // in F₂''
        assert!(metabelian_eq(&c, &Word::empty()));
        assert!(!metabelian_eq(&f, &Word::empty()));
        assert!(!metabelian_eq(&Word::x(), &Word::y()));
    }
}
