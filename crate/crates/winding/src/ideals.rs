//! Ideal membership in the two-variable integer Laurent ring.
//!
//! A cocommutative presentation (relators inside the derived subgroup)
//! induces a quotient of the Laurent ring by the ideal generated by the
//! relator invariants; the class of a word there is zero exactly when the
//! word lies in the second derived subgroup of the presented group.
//!
//! Membership is decided through strong Gröbner bases over the integers:
//! generators are normalized into the polynomial ring `Z[X, Y, U]`, the
//! saturation relation `U·X·Y − 1` is adjoined, and Buchberger's algorithm
//! runs with both S-polynomials and GCD-polynomials so that leading terms
//! of ideal elements are always strongly reducible. Coefficient ideals of
//! the base ring are not fields here, which is why the GCD pairs are
//! required; with them, normal form zero is equivalent to membership.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariant::winding_invariant;
use crate::laurent::LPoly;
use crate::words::Word;

/// A monomial `X^a Y^b U^c`, ordered by graded lex with `X > Y > U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mono3(pub u32, pub u32, pub u32);

impl Mono3 {
    fn degree(&self) -> u64 {
        self.0 as u64 + self.1 as u64 + self.2 as u64
    }

    fn divides(&self, other: &Mono3) -> bool {
        self.0 <= other.0 && self.1 <= other.1 && self.2 <= other.2
    }

    fn div(&self, other: &Mono3) -> Mono3 {
        Mono3(self.0 - other.0, self.1 - other.1, self.2 - other.2)
    }

    fn lcm(&self, other: &Mono3) -> Mono3 {
        Mono3(
            self.0.max(other.0),
            self.1.max(other.1),
            self.2.max(other.2),
        )
    }
}

impl Ord for Mono3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0, self.1, self.2).cmp(&(
            other.degree(),
            other.0,
            other.1,
            other.2,
        ))
    }
}

impl PartialOrd for Mono3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the non-negative variables `X, Y, U`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<Mono3, BigInt>,
}

impl Poly3 {
    pub fn zero() -> Poly3 {
        Poly3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono3, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono3, &BigInt)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(Mono3, &BigInt)> {
        self.terms.iter().next_back().map(|(&m, c)| (m, c))
    }

    fn sub_scaled_shift(&mut self, q: &BigInt, shift: Mono3, g: &Poly3) {
        for (m, c) in g.terms() {
            self.add_term(
                Mono3(m.0 + shift.0, m.1 + shift.1, m.2 + shift.2),
                -(q * c),
            );
        }
    }

    fn scaled_shift(&self, q: &BigInt, shift: Mono3) -> Poly3 {
        let mut out = Poly3::zero();
        for (m, c) in self.terms() {
            out.add_term(Mono3(m.0 + shift.0, m.1 + shift.1, m.2 + shift.2), q * c);
        }
        out
    }

    fn add(&self, other: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    fn neg(&self) -> Poly3 {
        let mut out = Poly3::zero();
        for (m, c) in self.terms() {
            out.add_term(m, -c);
        }
        out
    }

    /// Saturation relation `U·X·Y − 1`.
    pub fn saturation() -> Poly3 {
        let mut p = Poly3::zero();
        p.add_term(Mono3(1, 1, 1), BigInt::one());
        p.add_term(Mono3(0, 0, 0), -BigInt::one());
        p
    }

    /// Embeds a Laurent polynomial after monomial normalization.
    pub fn from_laurent(p: &LPoly) -> Poly3 {
        let (n, _) = p.normalized();
        let mut out = Poly3::zero();
        for ((i, j), c) in n.terms() {
            out.add_term(Mono3(i as u32, j as u32, 0), c.clone());
        }
        out
    }

    /// Projects back to the Laurent ring along `U ↦ X⁻¹Y⁻¹`.
    pub fn to_laurent(&self) -> LPoly {
        let mut out = LPoly::zero();
        for (m, c) in self.terms() {
            out.add_term(
                m.0 as i64 - m.2 as i64,
                m.1 as i64 - m.2 as i64,
                c.clone(),
            );
        }
        out
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
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
            for (name, e) in [("X", m.0), ("Y", m.1), ("U", m.2)] {
                if e > 0 {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(name);
                    if e > 1 {
                        vars.push_str(&format!("^{e}"));
                    }
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

/// Resource caps for basis construction.
#[derive(Debug, Clone, Copy)]
pub struct GroebnerConfig {
    /// Maximum number of critical pairs processed.
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 20_000 }
    }
}

/// Term order marker carried by a finished basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded lexicographic with `X > Y > U`.
    GradedLex,
}

/// A completed strong Gröbner basis over the integers, including the
/// saturation relation.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<Poly3>,
    pub order: TermOrder,
}

impl GroebnerBasis {
    /// Full strong reduction: deterministic, Euclidean coefficient
    /// remainders against positive leading coefficients.
    pub fn normal_form(&self, f: &Poly3) -> Poly3 {
        let mut work = f.clone();
        let mut rem = Poly3::zero();
        'outer: while let Some((m, c)) = work.leading().map(|(m, c)| (m, c.clone())) {
            for g in &self.generators {
                let (gm, gc) = g.leading().expect("basis elements are nonzero");
                if gm.divides(&m) {
                    let (q, _) = c.div_mod_floor(gc);
                    if !q.is_zero() {
                        work.sub_scaled_shift(&q, m.div(&gm), g);
                        continue 'outer;
                    }
                }
            }
            rem.add_term(m, c.clone());
            work.add_term(m, -c);
        }
        rem
    }

    /// Normal form of a Laurent polynomial (normalized before reduction),
    /// mapped back to the Laurent ring.
    pub fn laurent_normal_form(&self, p: &LPoly) -> LPoly {
        self.normal_form(&Poly3::from_laurent(p)).to_laurent()
    }

    /// Ideal membership in the Laurent ring.
    pub fn contains_laurent(&self, p: &LPoly) -> bool {
        self.normal_form(&Poly3::from_laurent(p)).is_zero()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        let mut one = Poly3::zero();
        one.add_term(Mono3(0, 0, 0), BigInt::one());
        self.normal_form(&one).is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    S,
    Gcd,
}

/// Buchberger over the integers with S- and GCD-pairs, normal selection
/// strategy, then interreduction.
pub fn groebner_basis(gens: &[LPoly], config: GroebnerConfig) -> Result<GroebnerBasis> {
    let mut basis: Vec<Poly3> = Vec::new();
    let add_gen = |g: Poly3, basis: &mut Vec<Poly3>| {
        if g.is_zero() {
            return;
        }
        let positive = g.leading().map(|(_, c)| c.is_positive()).unwrap_or(true);
        basis.push(if positive { g } else { g.neg() });
    };
    for g in gens {
        add_gen(Poly3::from_laurent(g), &mut basis);
    }
    add_gen(Poly3::saturation(), &mut basis);

    let mut pairs: Vec<(Mono3, usize, usize, PairKind)> = Vec::new();
    let queue_pairs = |i: usize, basis: &[Poly3], pairs: &mut Vec<_>| {
        let (mi, ci) = basis[i].leading().unwrap();
        for j in 0..i {
            let (mj, cj) = basis[j].leading().unwrap();
            let lcm = mi.lcm(&mj);
            pairs.push((lcm, j, i, PairKind::S));
            // A GCD pair is redundant when one leading coefficient divides
            // the other.
            if !(ci % cj).is_zero() && !(cj % ci).is_zero() {
                pairs.push((lcm, j, i, PairKind::Gcd));
            }
        }
    };
    for i in 0..basis.len() {
        queue_pairs(i, &basis, &mut pairs);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > config.max_pairs {
            return Err(Error::ResourceExceeded(format!(
                "Groebner pair budget {} exhausted",
                config.max_pairs
            )));
        }
        // normal strategy: smallest lcm, deterministic tie-break
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(lcm, i, j, kind))| (lcm, i, j, kind))
            .map(|(idx, _)| idx)
            .unwrap();
        let (lcm, i, j, kind) = pairs.swap_remove(best);
        let (mi, ci) = basis[i].leading().map(|(m, c)| (m, c.clone())).unwrap();
        let (mj, cj) = basis[j].leading().map(|(m, c)| (m, c.clone())).unwrap();
        let candidate = match kind {
            PairKind::S => {
                let l = ci.lcm(&cj);
                let left = basis[i].scaled_shift(&(&l / &ci), lcm.div(&mi));
                let right = basis[j].scaled_shift(&(&l / &cj), lcm.div(&mj));
                left.add(&right.neg())
            }
            PairKind::Gcd => {
                let e = ci.extended_gcd(&cj);
                let left = basis[i].scaled_shift(&e.x, lcm.div(&mi));
                let right = basis[j].scaled_shift(&e.y, lcm.div(&mj));
                left.add(&right)
            }
        };
        let view = GroebnerBasis {
            generators: basis.clone(),
            order: TermOrder::GradedLex,
        };
        let reduced = view.normal_form(&candidate);
        if !reduced.is_zero() {
            add_gen(reduced, &mut basis);
            queue_pairs(basis.len() - 1, &basis, &mut pairs);
        }
    }

    // Interreduce: drop elements whose leading term is strongly reducible by
    // another, then tail-reduce the survivors.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, ci) = basis[i].leading().map(|(m, c)| (m, c.clone())).unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, cj) = basis[j].leading().unwrap();
            let dominates = mj.divides(&mi) && (&ci % cj).is_zero();
            if dominates && (mj != mi || *cj != ci || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let survivors: Vec<Poly3> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    let mut finished = Vec::with_capacity(survivors.len());
    for i in 0..survivors.len() {
        let others = GroebnerBasis {
            generators: survivors
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect(),
            order: TermOrder::GradedLex,
        };
        let (m, c) = survivors[i].leading().map(|(m, c)| (m, c.clone())).unwrap();
        let mut tail = survivors[i].clone();
        tail.add_term(m, -c.clone());
        let mut reduced_tail = others.normal_form(&tail);
        reduced_tail.add_term(m, c);
        finished.push(reduced_tail);
    }
    Ok(GroebnerBasis {
        generators: finished,
        order: TermOrder::GradedLex,
    })
}

/// A cocommutative presentation: every relator lies in the derived
/// subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(relators: Vec<Word>) -> Result<Presentation> {
        for r in &relators {
            let (ex, ey) = r.exponent_vector();
            if (ex, ey) != (0, 0) {
                return Err(Error::NonZeroExponents { exp_x: ex, exp_y: ey });
            }
        }
        Ok(Presentation { relators })
    }

    /// One relator word per line; blank lines ignored.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut relators = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            relators.push(Word::parse(line)?);
        }
        Presentation::new(relators)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The invariants of the relators, generating the winding ideal.
    pub fn relator_invariants(&self) -> Result<Vec<LPoly>> {
        self.relators.iter().map(winding_invariant).collect()
    }

    pub fn groebner(&self, config: GroebnerConfig) -> Result<GroebnerBasis> {
        groebner_basis(&self.relator_invariants()?, config)
    }
}

/// Membership of `p` in the Laurent ideal generated by `gens`.
pub fn laurent_membership(p: &LPoly, gens: &[LPoly], config: GroebnerConfig) -> Result<bool> {
    Ok(groebner_basis(gens, config)?.contains_laurent(p))
}

/// The canonical normal form of `W(w)` modulo the winding ideal of the
/// presentation: zero exactly when the class of `w` lies in the second
/// derived subgroup of the presented group.
pub fn winding_class_mod(w: &Word, pres: &Presentation, config: GroebnerConfig) -> Result<LPoly> {
    let basis = pres.groebner(config)?;
    Ok(basis.laurent_normal_form(&winding_invariant(w)?))
}

/// `true` when `w` cannot be central in the presented group: the ideal
/// must contain `X^nY^m − 1` for the exponent vector of any central word.
pub fn center_obstruction(pres: &Presentation, w: &Word, config: GroebnerConfig) -> Result<bool> {
    let (n, m) = w.exponent_vector();
    let p = &LPoly::monomial(n, m) - &LPoly::one();
    if p.is_zero() {
        return Ok(false);
    }
    Ok(!pres.groebner(config)?.contains_laurent(&p))
}

/// Whether the presented group is quasi-perfect (derived subgroup equal to
/// the second): the winding ideal is the whole ring.
pub fn quasi_perfect(pres: &Presentation, config: GroebnerConfig) -> Result<bool> {
    Ok(pres.groebner(config)?.is_unit_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LPoly {
        LPoly::parse(s).unwrap()
    }

    fn cfg() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    #[test]
    fn unit_ideal_basis() {
        let basis = groebner_basis(&[LPoly::one()], cfg()).unwrap();
        assert!(basis.is_unit_ideal());
        assert_eq!(basis.generators.len(), 1);
        assert_eq!(format!("{}", basis.generators[0]), "1");
    }

    #[test]
    fn parity_ideal_normal_forms() {
        let gens = [p("2"), p("X - 1"), p("Y - 1")];
        let basis = groebner_basis(&gens, cfg()).unwrap();
        for s in ["1 + X + Y", "X^3*Y^-2", "5 - 2*X", "X^-1 - Y^-1"] {
            let q = p(s);
            let nf = basis.laurent_normal_form(&q);
            let parity = q.area().magnitude().bit(0);
            assert_eq!(!nf.is_zero(), parity, "{s}");
        }
    }

    #[test]
    fn thompson_relator_ideal_is_unit() {
        let gens = [p("1 + X^-1 - Y^-1"), p("1 + X^-1 + X^-2 - Y^-1 - X^-1*Y^-1")];
        assert!(laurent_membership(&LPoly::one(), &gens, cfg()).unwrap());
    }

    #[test]
    fn non_membership_example() {
        let gens = [p("1 + X + Y"), p("1 + X^2")];
        assert!(!laurent_membership(&p("1 + X + X*Y"), &gens, cfg()).unwrap());
    }

    #[test]
    fn membership_is_monomial_invariant() {
        let gens = [p("1 + X + Y"), p("1 + X^2")];
        let basis = groebner_basis(&gens, cfg()).unwrap();
        for s in ["1 + X + X*Y", "1 + X + Y", "3 + X^2*Y"] {
            let q = p(s);
            let direct = basis.contains_laurent(&q);
            assert_eq!(basis.contains_laurent(&q.mul_monomial(2, -3)), direct);
            assert_eq!(basis.contains_laurent(&q.mul_monomial(-1, 5)), direct);
        }
    }

    #[test]
    fn membership_of_generators() {
        let gens = [p("2 + X"), p("Y^2 - 3")];
        let basis = groebner_basis(&gens, cfg()).unwrap();
        for g in &gens {
            assert!(basis.contains_laurent(g));
        }
        let combo = &(&gens[0] * &p("X^-1 - Y")) + &(&gens[1] * &p("5 + X*Y"));
        assert!(basis.contains_laurent(&combo));
    }

    #[test]
    fn presentation_api() {
        let pres = Presentation::parse("xyXY\n\nx^2yX^2Y\n").unwrap();
        assert_eq!(pres.relators().len(), 2);
        assert!(Presentation::parse("xy").is_err());
    }

    #[test]
    fn thompson_presentation_quasi_perfect() {
        let r1 = Word::commutator(&Word::parse("xY").unwrap(), &Word::parse("Xyx").unwrap());
        let r2 = Word::commutator(&Word::parse("xY").unwrap(), &Word::parse("X^2yx^2").unwrap());
        assert_eq!(winding_invariant(&r1).unwrap(), p("1 + X^-1 - Y^-1"));
        assert_eq!(
            winding_invariant(&r2).unwrap(),
            p("1 + X^-1 + X^-2 - Y^-1 - X^-1*Y^-1")
        );
        let pres = Presentation::new(vec![r1.clone(), r2]).unwrap();
        assert!(quasi_perfect(&pres, cfg()).unwrap());
        let c = Word::commutator(&Word::x(), &Word::y());
        assert!(winding_class_mod(&c, &pres, cfg()).unwrap().is_zero());
        assert!(winding_class_mod(&r1, &pres, cfg()).unwrap().is_zero());
    }

    #[test]
    fn squared_commutator_classes() {
        let c = Word::commutator(&Word::x(), &Word::y());
        let pres = Presentation::new(vec![c.pow(2)]).unwrap();
        let nf = winding_class_mod(&c, &pres, cfg()).unwrap();
        assert_eq!(nf, LPoly::one());
        // Z² is abelian: x is central, X − 1 lies in the unit ideal
        let abelian = Presentation::new(vec![c.clone()]).unwrap();
        assert!(!center_obstruction(&abelian, &Word::x(), cfg()).unwrap());
        // mod ⟨2⟩ the center test fires for x
        assert!(center_obstruction(&pres, &Word::x(), cfg()).unwrap());
        // derived-subgroup words are never obstructed
        assert!(!center_obstruction(&pres, &c, cfg()).unwrap());
    }

    #[test]
    fn resource_cap_fires() {
        let gens = [p("2 + X^3*Y"), p("3*Y^2 + X"), p("5 + X*Y^4")];
        let tiny = GroebnerConfig { max_pairs: 1 };
        assert!(matches!(
            groebner_basis(&gens, tiny),
            Err(Error::ResourceExceeded(_))
        ));
    }

    #[test]
    fn principal_ideal_matches_exact_division() {
        let q = p("1 + X*Y + X^2");
        let basis = groebner_basis(&[q.clone()], cfg()).unwrap();
        let multiple = &q * &p("3 - X + Y^-2");
        assert!(basis.contains_laurent(&multiple));
        assert!(!basis.contains_laurent(&p("1 + X")));
        assert_eq!(
            multiple.exact_divide(&q).unwrap().is_some(),
            basis.contains_laurent(&multiple)
        );
    }
}
