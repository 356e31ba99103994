//! Winding invariants of free-group words.
//!
//! Every word in the derived subgroup of the free group on `x, y` traces a
//! closed curve in the unit grid; the winding numbers of that curve around
//! the grid-cell centers are the coefficients of a Laurent polynomial in
//! two variables. The resulting homomorphism into the Laurent ring has the
//! second derived subgroup as kernel, so it turns equations in the free
//! metabelian group of rank 2 into exact polynomial arithmetic.
//!
//! The crate provides:
//!
//! * [`words`] — free-group words, special words, endomorphisms;
//! * [`laurent`] — exact sparse integer Laurent polynomials;
//! * [`invariant`] — the winding map, Fox pairs, κ, and the planar
//!   Cayley-graph variants;
//! * [`powers`] — decisions and obstructions for products of k-th powers;
//! * [`commutators`] — the parallelogram invariant ι, coset-sum
//!   obstructions, lower-central-series membership;
//! * [`metabelian`] — constructive commutator-length and square-length
//!   results in the free metabelian group;
//! * [`ideals`] — presentation ideals via strong Gröbner bases over the
//!   integers;
//! * [`tilings`] — polyomino boundary words, bisections, tiling
//!   enumeration and normal-root candidates.
//!
//! The companion `winding` binary (crate `winding-cli`) exposes every
//! decision procedure with JSON output; the `book/` directory of the
//! repository walks through the mathematics with runnable snippets.

pub mod commutators;
pub mod error;
pub mod ideals;
pub mod invariant;
pub mod metabelian;
pub mod laurent;
pub mod powers;
pub mod tilings;
pub mod words;

pub use error::{Error, Result};
pub use invariant::{
    cyclic_cayley_invariant, fox_pair, kappa, klein_invariant, signed_area, winding_invariant,
    word_from_polynomial, CyclicVector, FoxPair,
};
pub use laurent::{LPoly, Monomial};
pub use words::{Endomorphism, Gen, Word};

#[cfg(doctest)]
mod book {
    //! Doc-tests the code snippets of the mdbook guide in `book/src`.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(words, "../../../book/src/words.md");
    chapter!(invariant, "../../../book/src/invariant.md");
    chapter!(laurent, "../../../book/src/laurent.md");
    chapter!(powers, "../../../book/src/powers.md");
    chapter!(commutators, "../../../book/src/commutators.md");
    chapter!(metabelian, "../../../book/src/metabelian.md");
    chapter!(ideals, "../../../book/src/ideals.md");
    chapter!(tilings, "../../../book/src/tilings.md");
    chapter!(cli, "../../../book/src/cli.md");
}
