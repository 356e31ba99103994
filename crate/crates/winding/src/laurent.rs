//! Exact sparse Laurent polynomials in two variables over the integers.
//!
//! [`LPoly`] stores a map from exponent pairs `(i, j)` (the monomial
//! `X^i Y^j`) to nonzero arbitrary-precision coefficients, so the ring
//! operations are exact and support geometry (widths, leading terms under
//! graded lex) is directly available. Besides ring arithmetic the module
//! provides the integer Taylor expansion about `(1, 1)`, exact division by
//! polynomials with unit leading coefficient, monomial substitutions
//! (unimodular coordinate changes in particular) and the small residue
//! evaluations used by the metabelian decision procedures.
//!
//! Text format: signed terms `c*X^a*Y^b` with the `*` optional, e.g.
//! `1 + X^2*Y^-1 - 2*Y^-1`. In JSON a polynomial is an array of `[a, b, c]`
//! triples.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The monomial `X^n Y^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub i64, pub i64);

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial(self.0 + rhs.0, self.1 + rhs.1)
    }
}

/// A sparse integer Laurent polynomial in `X` and `Y`.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct LPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly::default()
    }

    pub fn one() -> LPoly {
        LPoly::constant(1)
    }

    pub fn constant(c: i64) -> LPoly {
        LPoly::term(0, 0, big(c))
    }

    /// `X^i Y^j`.
    pub fn monomial(i: i64, j: i64) -> LPoly {
        LPoly::term(i, j, BigInt::one())
    }

    pub fn term(i: i64, j: i64, c: BigInt) -> LPoly {
        let mut p = LPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64, BigInt)>>(terms: I) -> LPoly {
        let mut p = LPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `X^i Y^j` (zero when absent).
    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Exponent pairs with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.keys().copied()
    }

    /// `(min_i, min_j)` over the support, per coordinate independently.
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let mi = self.terms.keys().map(|k| k.0).min().unwrap();
        let mj = self.terms.keys().map(|k| k.1).min().unwrap();
        Some((mi, mj))
    }

    pub fn max_exponents(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let mi = self.terms.keys().map(|k| k.0).max().unwrap();
        let mj = self.terms.keys().map(|k| k.1).max().unwrap();
        Some((mi, mj))
    }

    /// Support width along `X` and `Y` (zero for a single point or zero).
    pub fn widths(&self) -> (i64, i64) {
        match (self.min_exponents(), self.max_exponents()) {
            (Some((ai, aj)), Some((bi, bj))) => (bi - ai, bj - aj),
            _ => (0, 0),
        }
    }

    pub fn neg_ref(&self) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> LPoly {
        self.scale(&big(c))
    }

    /// Multiplies by the monomial `X^i Y^j`.
    pub fn mul_monomial(&self, i: i64, j: i64) -> LPoly {
        LPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    /// The unique monomial shift with all exponents `>= 0` and zero minimum
    /// in each variable; returns `(shifted, (si, sj))` with
    /// `self = X^{-si} Y^{-sj} * shifted`.
    pub fn normalized(&self) -> (LPoly, (i64, i64)) {
        match self.min_exponents() {
            None => (LPoly::zero(), (0, 0)),
            Some((mi, mj)) => (self.mul_monomial(-mi, -mj), (-mi, -mj)),
        }
    }

    /// Evaluation at `(±1, ±1)`; these are the four ring maps to Z that are
    /// defined on the whole Laurent ring.
    pub fn eval_pm(&self, sx: i64, sy: i64) -> BigInt {
        assert!(sx == 1 || sx == -1);
        assert!(sy == 1 || sy == -1);
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            let mut s = c.clone();
            if sx < 0 && i.rem_euclid(2) == 1 {
                s = -s;
            }
            if sy < 0 && j.rem_euclid(2) == 1 {
                s = -s;
            }
            acc += s;
        }
        acc
    }

    /// The signed area `P(1, 1)`: the sum of all coefficients.
    pub fn area(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Row sums indexed by the `Y`-exponent.
    pub fn row_sums(&self) -> BTreeMap<i64, BigInt> {
        let mut rows: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(_, j), c) in &self.terms {
            let e = rows.entry(j).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                rows.remove(&j);
            }
        }
        rows
    }

    /// Leading `(monomial, coefficient)` under graded lex on the exponents.
    ///
    /// For polynomials with non-negative exponents this is the fixed term
    /// order of the crate; callers normalize first when the input is a
    /// genuine Laurent polynomial.
    pub fn leading(&self) -> Option<((i64, i64), BigInt)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&k, c)| (k, c.clone()))
    }

    /// Exact division by an integer; `None` when some coefficient is not
    /// divisible.
    pub fn divide_by_int(&self, n: &BigInt) -> Option<LPoly> {
        assert!(!n.is_zero());
        let mut out = LPoly::zero();
        for (&(i, j), c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, n);
            if !r.is_zero() {
                return None;
            }
            out.add_term(i, j, q);
        }
        Some(out)
    }

    /// Exact division in the Laurent ring.
    ///
    /// Monomial units are factored out of both operands first; the divisor
    /// must then have leading coefficient ±1 under graded lex (callers
    /// transform by a unimodular substitution when it does not). Returns
    /// `Ok(None)` when no quotient exists.
    pub fn exact_divide(&self, divisor: &LPoly) -> Result<Option<LPoly>> {
        if divisor.is_zero() {
            return Err(Error::InvalidParameter("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Some(LPoly::zero()));
        }
        let (p, (pi, pj)) = self.normalized();
        let (q, (qi, qj)) = divisor.normalized();
        let ((qm_i, qm_j), qc) = q.leading().unwrap();
        if !(qc.abs().is_one()) {
            return Err(Error::NonUnitLeadingCoefficient);
        }
        let mut rem = p;
        let mut quot = LPoly::zero();
        while let Some(((ri, rj), rc)) = rem.leading() {
            if ri < qm_i || rj < qm_j {
                return Ok(None);
            }
            let (ti, tj) = (ri - qm_i, rj - qm_j);
            let tc = if qc.is_one() { rc } else { -rc };
            quot.add_term(ti, tj, tc.clone());
            rem = &rem - &q.mul_monomial(ti, tj).scale(&tc);
        }
        // self = X^{-pi}Y^{-pj} p, divisor = X^{-qi}Y^{-qj} q.
        Ok(Some(quot.mul_monomial(qi - pi, qj - pj)))
    }

    /// Integer Taylor coefficients about `(1, 1)` of the normalized
    /// polynomial: `normalized(P) = Σ a_{i,j} (X−1)^i (Y−1)^j`.
    pub fn taylor_coefficients(&self) -> BTreeMap<(u32, u32), BigInt> {
        let (p, _) = self.normalized();
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i, j), c) in &p.terms {
            let (i, j) = (i as u32, j as u32);
            // X^i = ((X−1)+1)^i, Y^j likewise: binomial shifts.
            let mut bi = BigInt::one();
            for k in 0..=i {
                let mut bj = BigInt::one();
                for l in 0..=j {
                    let e = out.entry((k, l)).or_insert_with(BigInt::zero);
                    *e += c * &bi * &bj;
                    bj = bj * big((j - l) as i64) / big((l + 1) as i64);
                }
                bi = bi * big((i - k) as i64) / big((k + 1) as i64);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// One Taylor coefficient `a_{i,j}` of the normalized polynomial.
    pub fn taylor_coefficient(&self, i: u32, j: u32) -> BigInt {
        self.taylor_coefficients()
            .remove(&(i, j))
            .unwrap_or_else(BigInt::zero)
    }

    /// `(X−1)^i (Y−1)^j` as a polynomial.
    pub fn xy_shift_power(i: u32, j: u32) -> LPoly {
        let xm1 = &LPoly::monomial(1, 0) - &LPoly::one();
        let ym1 = &LPoly::monomial(0, 1) - &LPoly::one();
        let mut p = LPoly::one();
        for _ in 0..i {
            p = &p * &xm1;
        }
        for _ in 0..j {
            p = &p * &ym1;
        }
        p
    }

    /// Substitutes `X ↦ X^{ax} Y^{ay}`, `Y ↦ X^{bx} Y^{by}`.
    pub fn monomial_substitute(&self, (ax, ay): (i64, i64), (bx, by): (i64, i64)) -> LPoly {
        let mut out = LPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(ax * i + bx * j, ay * i + by * j, c.clone());
        }
        out
    }

    /// The ring automorphism sending `X^a Y^b` to `X^{a'} Y^{b'}` with
    /// `(a', b') = U (a, b)` for a unimodular integer matrix `U` (rows).
    pub fn unimodular_substitute(&self, u: [[i64; 2]; 2]) -> Result<LPoly> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::NonUnimodular);
        }
        Ok(self.monomial_substitute((u[0][0], u[1][0]), (u[0][1], u[1][1])))
    }

    /// `P(1,1) mod 2`: the residue modulo `⟨2, Y−1, X−1⟩`.
    pub fn residue_mod_two_aug(&self) -> u8 {
        (self.area().abs() % big(2) == big(1)) as u8
    }

    /// Residue modulo `⟨2, Y−1, X²−1⟩` as `(even, odd)` bits: the sums of
    /// coefficients in even and odd `X`-degree, each mod 2.
    pub fn residue_mod_two_x2(&self) -> (u8, u8) {
        let mut even = BigInt::zero();
        let mut odd = BigInt::zero();
        for (&(i, _), c) in &self.terms {
            if i.rem_euclid(2) == 0 {
                even += c;
            } else {
                odd += c;
            }
        }
        let bit = |v: BigInt| (v.abs() % big(2) == big(1)) as u8;
        (bit(even), bit(odd))
    }

    /// The row-coloring sum: rows `0, 1 mod 4` count positively, rows
    /// `2, 3 mod 4` negatively.
    pub fn kappa(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, s) in self.row_sums() {
            if j.rem_euclid(4) <= 1 {
                acc += s;
            } else {
                acc -= s;
            }
        }
        acc
    }

    /// Terms as `[a, b, c]` triples in `(a, b)` order, for JSON output.
    pub fn json_terms(&self) -> Vec<(i64, i64, BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect()
    }

    /// Parses the text format, e.g. `1 + X^2*Y^-1 - 2*Y^-1`.
    pub fn parse(text: &str) -> Result<LPoly> {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
        .parse()
    }
}

impl Add for &LPoly {
    type Output = LPoly;

    fn add(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &LPoly {
    type Output = LPoly;

    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &LPoly {
    type Output = LPoly;

    fn neg(self) -> LPoly {
        self.neg_ref()
    }
}

impl Mul for &LPoly {
    type Output = LPoly;

    fn mul(self, rhs: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term(a + i, b + j, c * d);
            }
        }
        out
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let mut vars = String::new();
            if i != 0 {
                vars.push('X');
                if i != 1 {
                    vars.push_str(&format!("^{i}"));
                }
            }
            if j != 0 {
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push('Y');
                if j != 1 {
                    vars.push_str(&format!("^{j}"));
                }
            }
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{a}*{vars}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly({self})")
    }
}

impl FromStr for LPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<LPoly> {
        LPoly::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::PolySyntax(format!("expected digits at {}", self.pos)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::PolySyntax("bad integer".into()))
    }

    fn exponent(&mut self) -> Result<i64> {
        // after '^'
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        }
        let n = self.integer()?;
        let v: i64 = n.try_into().map_err(|_| Error::ExponentOverflow)?;
        Ok(if neg { -v } else { v })
    }

    fn parse(mut self) -> Result<LPoly> {
        let mut out = LPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::PolySyntax("empty polynomial".into()));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            let mut sign = 1i64;
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ if first => {}
                Some(c) => {
                    return Err(Error::PolySyntax(format!(
                        "expected '+' or '-' before term, found {c:?}"
                    )))
                }
                None => break,
            }
            first = false;
            self.skip_ws();
            // term: optional integer, then variable factors
            let mut coeff = BigInt::one();
            let mut have_any = false;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                coeff = self.integer()?;
                have_any = true;
            }
            let (mut ei, mut ej) = (0i64, 0i64);
            loop {
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.skip_ws();
                }
                match self.peek() {
                    Some('X') | Some('x') => {
                        self.pos += 1;
                        let e = if self.peek() == Some('^') {
                            self.pos += 1;
                            self.exponent()?
                        } else {
                            1
                        };
                        ei += e;
                        have_any = true;
                    }
                    Some('Y') | Some('y') => {
                        self.pos += 1;
                        let e = if self.peek() == Some('^') {
                            self.pos += 1;
                            self.exponent()?
                        } else {
                            1
                        };
                        ej += e;
                        have_any = true;
                    }
                    _ => break,
                }
            }
            if !have_any {
                return Err(Error::PolySyntax(format!(
                    "expected term at position {}",
                    self.pos
                )));
            }
            out.add_term(ei, ej, coeff * big(sign));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LPoly {
        LPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["1 + X^2*Y^-1 - 2*Y^-1", "X + X^2 - 2*Y^-1", "0", "-3", "X*Y"] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s}");
        }
    }

    #[test]
    fn ring_basics() {
        let a = p("1 + X");
        let b = p("1 - X");
        assert_eq!(&a * &b, p("1 - X^2"));
        assert_eq!(&a + &b, p("2"));
        assert_eq!(&a - &a, LPoly::zero());
        assert_eq!(&a * &LPoly::one(), a);
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(LPoly::one().taylor_coefficient(0, 0), big(1));
        let q = p("X*Y - X - Y + 1"); // (X−1)(Y−1)
        let t = q.taylor_coefficients();
        assert_eq!(t.len(), 1);
        assert_eq!(t[&(1, 1)], big(1));
        // X^3 − 1 = 3(X−1) + 3(X−1)^2 + (X−1)^3
        let t = p("X^3 - 1").taylor_coefficients();
        assert_eq!(t.get(&(0, 0)), None);
        assert_eq!(t[&(1, 0)], big(3));
        assert_eq!(t[&(2, 0)], big(3));
        assert_eq!(t[&(3, 0)], big(1));
    }

    #[test]
    fn taylor_recompose() {
        let q = p("2*X^2*Y - 3*X + Y^-2 + 7");
        let (norm, _) = q.normalized();
        let mut acc = LPoly::zero();
        for ((i, j), c) in q.taylor_coefficients() {
            acc = &acc + &LPoly::xy_shift_power(i, j).scale(&c);
        }
        assert_eq!(acc, norm);
    }

    #[test]
    fn exact_divide_examples() {
        let a = p("1 + X");
        assert_eq!(a.exact_divide(&a).unwrap().unwrap(), LPoly::one());
        let prod = &p("1 + X") * &p("1 + Y + Y^2");
        assert_eq!(
            prod.exact_divide(&p("1 + Y + Y^2")).unwrap().unwrap(),
            p("1 + X")
        );
        assert_eq!(LPoly::one().exact_divide(&p("1 + X")).unwrap(), None);
        assert!(matches!(
            p("1 + X").exact_divide(&p("2*X^2 + Y")),
            Err(Error::NonUnitLeadingCoefficient)
        ));
        assert!(p("X").exact_divide(&LPoly::zero()).is_err());
        // Laurent shifts are handled.
        let lp = p("X^-1 + X^-2");
        assert_eq!(
            lp.exact_divide(&p("1 + X")).unwrap().unwrap(),
            p("X^-2")
        );
    }

    #[test]
    fn unimodular_substitution() {
        let u = [[1, 0], [1, 1]]; // (a,b) -> (a, a+b)
        assert_eq!(p("X").unimodular_substitute(u).unwrap(), p("X*Y"));
        assert_eq!(p("X*Y").unimodular_substitute(u).unwrap(), p("X*Y^2"));
        assert!(p("X").unimodular_substitute([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(p("1 + X").residue_mod_two_x2(), (1, 1));
        assert_eq!(p("2 + X^2").residue_mod_two_x2(), (1, 0));
        assert_eq!(p("X^-1 + X").residue_mod_two_x2(), (0, 0));
        assert_eq!(p("1 + X + Y").residue_mod_two_aug(), 1);
    }

    #[test]
    fn kappa_rows() {
        // −(Y−1)^2 = −Y^2 + 2Y − 1: rows 0,1 black, row 2 white.
        assert_eq!(p("-1 + 2*Y - Y^2").kappa(), big(2));
        assert_eq!(LPoly::one().kappa(), big(1));
    }

    #[test]
    fn leading_graded_lex() {
        assert_eq!(p("X^2 + X*Y + Y^2").leading().unwrap().0, (2, 0));
        assert_eq!(p("1 + X + X*Y").leading().unwrap().0, (1, 1));
    }
}
