//! Free-group words over the two generators `x` and `y`.
//!
//! A [`Word`] is stored run-length compressed as a sequence of
//! `(generator, signed exponent)` runs and is kept freely reduced at all
//! times: pushing a run merges it with the top of the sequence and drops
//! runs that cancel to exponent zero. Concatenation, inversion and powers
//! therefore always return reduced words.
//!
//! The text grammar is `word := atom*`, `atom := [xyXY] ('^' '-'? digits)?`
//! where `X` and `Y` denote the inverse generators and whitespace separates
//! atoms. `parse` followed by `to_string` followed by `parse` is a fixed
//! point.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::X => Gen::Y,
            Gen::Y => Gen::X,
        }
    }
}

/// A freely reduced word in the free group of rank 2.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    runs: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// The generator `x`.
    pub fn x() -> Word {
        Word::generator_pow(Gen::X, 1)
    }

    /// The generator `y`.
    pub fn y() -> Word {
        Word::generator_pow(Gen::Y, 1)
    }

    /// `g^e`; the empty word when `e == 0`.
    pub fn generator_pow(g: Gen, e: i64) -> Word {
        let mut w = Word::empty();
        w.push_run(g, e);
        w
    }

    pub fn x_pow(e: i64) -> Word {
        Word::generator_pow(Gen::X, e)
    }

    pub fn y_pow(e: i64) -> Word {
        Word::generator_pow(Gen::Y, e)
    }

    /// Appends `g^e`, merging and cancelling with the current tail.
    pub fn push_run(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((tg, te)) if *tg == g => {
                *te += e;
                if *te == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((g, e)),
        }
    }

    /// The reduced runs `(generator, signed exponent)`.
    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.runs
    }

    /// Iterates over single letters `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            let s = e.signum();
            (0..e.unsigned_abs()).map(move |_| (g, s))
        })
    }

    /// Reduced word length (number of letters).
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total exponent of `x`.
    pub fn exp_x(&self) -> i64 {
        self.runs
            .iter()
            .filter(|(g, _)| *g == Gen::X)
            .map(|&(_, e)| e)
            .sum()
    }

    /// Total exponent of `y`.
    pub fn exp_y(&self) -> i64 {
        self.runs
            .iter()
            .filter(|(g, _)| *g == Gen::Y)
            .map(|&(_, e)| e)
            .sum()
    }

    /// The abelianized image `(exp_x, exp_y)`.
    pub fn exponent_vector(&self) -> (i64, i64) {
        (self.exp_x(), self.exp_y())
    }

    /// Whether the word lies in the derived subgroup.
    pub fn in_derived_subgroup(&self) -> bool {
        self.exponent_vector() == (0, 0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for &(g, e) in self.runs.iter().rev() {
            w.push_run(g, -e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// The left-normed simple commutator `[a₁, a₂, …, a_k] = [a₁, [a₂, …, a_k]]`.
    ///
    /// The empty list gives the empty word; a single entry is returned as is.
    pub fn simple_commutator(parts: &[Word]) -> Word {
        match parts {
            [] => Word::empty(),
            [w] => w.clone(),
            [head, tail @ ..] => Word::commutator(head, &Word::simple_commutator(tail)),
        }
    }

    /// The Engel word `e_n`: `e_1 = [y, x]` and `e_{n+1} = [y, e_n]`.
    pub fn engel(n: u32) -> Result<Word> {
        if n == 0 {
            return Err(Error::InvalidParameter("engel index must be >= 1".into()));
        }
        let mut e = Word::commutator(&Word::y(), &Word::x());
        for _ in 1..n {
            e = Word::commutator(&Word::y(), &e);
        }
        Ok(e)
    }

    /// The basic-commutator chain word `v_l` with invariant `(X−1)^l (Y−1)^s`.
    ///
    /// Built as `u_0 = [x,y]`, `u_{k+1} = [u_k⁻¹, y]`, then `v_0 = u_s`,
    /// `v_{k+1} = [v_k⁻¹, x]`; the result is a basic commutator of weight
    /// `l + s + 2`.
    pub fn basic_chain(l: u32, s: u32) -> Word {
        let mut u = Word::commutator(&Word::x(), &Word::y());
        for _ in 0..s {
            u = Word::commutator(&u.inverse(), &Word::y());
        }
        for _ in 0..l {
            u = Word::commutator(&u.inverse(), &Word::x());
        }
        u
    }

    /// `x^n y^m [x,y]^c y^{−m} x^{−n}`, the conjugated commutator power with
    /// invariant `c·X^nY^m`.
    pub fn conj_gen(n: i64, m: i64, c: i64) -> Word {
        Word::x_pow(n)
            .concat(&Word::y_pow(m))
            .concat(&Word::commutator(&Word::x(), &Word::y()).pow(c))
            .concat(&Word::y_pow(-m))
            .concat(&Word::x_pow(-n))
    }

    /// Parses the `[xyXY]` grammar with optional `^k` powers.
    pub fn parse(text: &str) -> Result<Word> {
        let mut w = Word::empty();
        let mut chars = text.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let (g, sign): (Gen, i64) = match c {
                'x' => (Gen::X, 1),
                'X' => (Gen::X, -1),
                'y' => (Gen::Y, 1),
                'Y' => (Gen::Y, -1),
                other => return Err(Error::WordSyntax { pos, found: other }),
            };
            chars.next();
            let mut exp: i64 = 1;
            if let Some(&(_, '^')) = chars.peek() {
                chars.next();
                let mut digits = String::new();
                if let Some(&(_, '-')) = chars.peek() {
                    digits.push('-');
                    chars.next();
                }
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() || digits == "-" {
                    let (pos, found) = chars.peek().copied().unwrap_or((text.len(), ' '));
                    return Err(Error::WordSyntax { pos, found });
                }
                exp = digits.parse().map_err(|_| Error::ExponentOverflow)?;
            }
            w.push_run(g, sign.checked_mul(exp).ok_or(Error::ExponentOverflow)?);
        }
        Ok(w)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(g, e) in &self.runs {
            let c = match (g, e > 0) {
                (Gen::X, true) => 'x',
                (Gen::X, false) => 'X',
                (Gen::Y, true) => 'y',
                (Gen::Y, false) => 'Y',
            };
            write!(f, "{c}")?;
            if e.unsigned_abs() >= 2 {
                write!(f, "^{}", e.unsigned_abs())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// An endomorphism of the free group, given by the images of `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    pub img_x: Word,
    pub img_y: Word,
}

impl Endomorphism {
    pub fn new(img_x: Word, img_y: Word) -> Endomorphism {
        Endomorphism { img_x, img_y }
    }

    pub fn identity() -> Endomorphism {
        Endomorphism::new(Word::x(), Word::y())
    }

    /// Substitutes every letter by its image (inverse image for negative
    /// letters) and reduces.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for &(g, e) in w.runs() {
            let img = match g {
                Gen::X => &self.img_x,
                Gen::Y => &self.img_y,
            };
            out = out.concat(&img.pow(e));
        }
        out
    }

    /// The induced 2×2 integer matrix on the abelianization, columns the
    /// exponent vectors of the images: `[[x-exps of images], [y-exps]]`.
    pub fn abelianized(&self) -> [[i64; 2]; 2] {
        [
            [self.img_x.exp_x(), self.img_y.exp_x()],
            [self.img_x.exp_y(), self.img_y.exp_y()],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(w("xyXY").len(), 4);
        assert_eq!(w("xX"), Word::empty());
        assert_eq!(w("x^3 y X^2 Y^2 X y x Y X y").len(), 14);
        assert_eq!(w("x^2X^2y"), w("y"));
        assert_eq!(w("x^-2"), w("X^2"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(Word::parse("xz"), Err(Error::WordSyntax { .. })));
        assert!(matches!(
            Word::parse("x^99999999999999999999"),
            Err(Error::ExponentOverflow)
        ));
        assert!(Word::parse("x^").is_err());
    }

    #[test]
    fn print_parse_fixed_point() {
        for s in ["xyXY", "x^3yX^2Y^2XyxYXy", "", "X^4y^2", "Yx"] {
            let a = w(s);
            let b = w(&a.to_string());
            assert_eq!(a, b);
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn exponents() {
        let a = w("x^3yX^2Y^2XyxYXy");
        assert_eq!(a.exponent_vector(), (0, 0));
        assert!(a.in_derived_subgroup());
        assert_eq!(w("x^2y").exponent_vector(), (2, 1));
    }

    #[test]
    fn commutator_has_zero_exponents() {
        let c = Word::commutator(&w("x^2Y"), &w("yxy"));
        assert_eq!(c.exponent_vector(), (0, 0));
    }

    #[test]
    fn engel_words() {
        assert_eq!(Word::engel(1).unwrap(), w("yxYX"));
        assert!(Word::engel(0).is_err());
        assert_eq!(Word::engel(2).unwrap(), Word::commutator(&Word::y(), &w("yxYX")));
    }

    #[test]
    fn conj_gen_shape() {
        assert_eq!(Word::conj_gen(2, 3, 1), w("x^2y^3 xyXY Y^3X^2"));
        assert_eq!(Word::conj_gen(0, 0, 1), w("xyXY"));
        assert_eq!(Word::conj_gen(1, 1, 0), Word::empty());
    }

    #[test]
    fn inverse_and_pow() {
        let a = w("x^2yX");
        assert_eq!(a.concat(&a.inverse()), Word::empty());
        assert_eq!(a.pow(3), a.concat(&a).concat(&a));
        assert_eq!(a.pow(-2), a.inverse().concat(&a.inverse()));
    }

    #[test]
    fn endomorphism_examples() {
        let c = w("xyXY");
        let id = Endomorphism::identity();
        assert_eq!(id.apply(&c), c);
        let swap = Endomorphism::new(Word::y(), Word::x());
        assert_eq!(swap.apply(&c), w("yxYX"));
        let phi = Endomorphism::new(w("xy"), Word::empty());
        assert_eq!(phi.apply(&Word::x()), w("xy"));
    }

    #[test]
    fn endomorphism_commutes_with_concat() {
        let phi = Endomorphism::new(w("xyX"), w("yy"));
        let a = w("x^2Yx");
        let b = w("YXy^3");
        assert_eq!(phi.apply(&a.concat(&b)), phi.apply(&a).concat(&phi.apply(&b)));
    }

    #[test]
    fn basic_chain_weight() {
        // weight l + s + 2 basic commutator; invariant checked in the
        // invariant module tests.
        let v = Word::basic_chain(1, 1);
        assert!(v.in_derived_subgroup());
    }
}
