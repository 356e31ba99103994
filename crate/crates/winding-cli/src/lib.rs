//! Command-line front end for the winding crate.
//!
//! Every subcommand prints a single JSON object (or key/value text with
//! `--format text`) and exits 0 on any computed verdict, 2 on input
//! errors, 3 when a resource cap fires. Verdicts carry a `theorem` tag
//! naming the criterion used and a `scope` tag: `F2` for statements about
//! the free group, `M2` for the free metabelian group, `necessary-only`
//! for one-sided tests.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use winding::commutators::{
    ab_squared_obstruction, commutator_obstruction, gamma_membership_mod_second_derived, iota,
    simple_commutator_decide, Lattice, ObstructionVerdict,
};
use winding::ideals::{GroebnerConfig, Presentation};
use winding::invariant::{fox_pair, winding_invariant};
use winding::laurent::LPoly;
use winding::metabelian::{
    cl2_decomposition, engel_verbal_obstruction, five_squares_decompose, square_length_bounds,
    three_squares_decide_partial, ThreeSquares,
};
use winding::powers::{
    cube_product_decide, engel_pth_decomposition, fourth_power_kappa_test, power_area_test,
    two_kth_powers_decide, two_pth_powers_cyclic_test, two_squares_klein_test,
};
use winding::tilings::{Bisection, Region, Transform};
use winding::words::Word;
use winding::Error;

#[derive(Parser)]
#[command(
    name = "winding",
    about = "Winding invariants of free-group words: exact decision procedures for equations over the free and free metabelian groups of rank 2, and polyomino bisections",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Seed for sampled verifications.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Winding invariant of a word in the derived subgroup.
    Invariant { word: String },
    /// Signed area (invariant evaluated at (1,1)).
    Area { word: String },
    /// Row-coloring sum of the invariant.
    Kappa { word: String },
    /// Abelianized Fox derivatives.
    Fox { word: String },
    /// Products of two k-th powers: complete decision and necessary tests.
    Powers(PowersArgs),
    /// Complete decision for products of cubes in the free group.
    Cube { word: String },
    /// Commutator obstructions and the parallelogram invariant.
    Commutator(CommutatorArgs),
    /// Lower-central-series membership modulo the second derived subgroup.
    Gamma {
        #[arg(long)]
        m: u32,
        word: String,
    },
    /// Square decompositions and square-length bounds.
    Squares(SquaresArgs),
    /// Two commutators realizing a polynomial (commutator length <= 2).
    Cl(ClArgs),
    /// Engel verbal-subgroup obstruction and p-th power decompositions.
    Engel(EngelArgs),
    /// Winding ideals of cocommutative presentations.
    Ideal(IdealArgs),
    /// Polyomino regions: boundary words, bisections, tilings, roots.
    #[command(subcommand)]
    Tile(TileCommand),
}

#[derive(Args)]
struct PowersArgs {
    /// Power exponent k.
    #[arg(long)]
    k: u32,
    /// decide: complete in M2; area/kappa/cyclic/klein: necessary tests.
    #[arg(long, default_value = "decide", value_parser = ["decide", "area", "kappa", "cyclic", "klein"])]
    mode: String,
    word: String,
}

#[derive(Args)]
struct CommutatorArgs {
    /// Polynomial to test as a commutator invariant.
    #[arg(long, conflicts_with_all = ["iota", "ab_squared", "simple"])]
    poly: Option<String>,
    /// Two words: report the orientation sign of their exponent vectors.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    iota: Option<Vec<String>>,
    /// Polynomial to test as W([a^2, b]).
    #[arg(long)]
    ab_squared: Option<String>,
    /// Weight k for the simple-commutator divisibility decision.
    #[arg(long, requires = "simple_poly")]
    simple: Option<u32>,
    /// Polynomial for --simple.
    #[arg(long)]
    simple_poly: Option<String>,
    /// Sampled coset-sum verifications for --iota.
    #[arg(long, default_value_t = 8)]
    verify_samples: usize,
}

#[derive(Args)]
struct SquaresArgs {
    /// bounds (default), three, or five.
    #[arg(long, default_value = "bounds", value_parser = ["bounds", "three", "five"])]
    mode: String,
    word: String,
}

#[derive(Args)]
struct ClArgs {
    /// Target polynomial.
    #[arg(long, conflicts_with = "word")]
    poly: Option<String>,
    /// Target word in the derived subgroup.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct EngelArgs {
    /// Engel index for the verbal-subgroup obstruction.
    #[arg(long, requires = "word")]
    n: Option<u32>,
    word: Option<String>,
    /// Prime p: decompose e_{p+1} into three p-th powers.
    #[arg(long)]
    powers: Option<u32>,
}

#[derive(Args)]
struct IdealArgs {
    /// Presentation file: one relator word per line.
    #[arg(long)]
    presentation: String,
    /// Test membership of a word's invariant in the winding ideal.
    #[arg(long)]
    member_word: Option<String>,
    /// Test membership of a polynomial.
    #[arg(long)]
    member_poly: Option<String>,
    /// Normal form of a word's invariant modulo the ideal.
    #[arg(long)]
    class: Option<String>,
    /// Central-element obstruction for a word.
    #[arg(long)]
    center: Option<String>,
    /// Whether the presented group is quasi-perfect.
    #[arg(long)]
    quasi_perfect: bool,
    /// Cap on Groebner pair reductions.
    #[arg(long, default_value_t = 20_000)]
    max_pairs: usize,
}

#[derive(Subcommand)]
enum TileCommand {
    /// Clockwise boundary word of a region.
    Boundary {
        file: String,
        /// Base vertex "i,j"; defaults to the smallest boundary vertex.
        #[arg(long)]
        base: Option<String>,
    },
    /// Bisections into a tile and a congruent copy.
    Bisect {
        file: String,
        /// Also search rotations and reflections.
        #[arg(long)]
        symmetry: bool,
    },
    /// Product-of-two-squares identity from a translate bisection.
    TwoSquares {
        file: String,
        /// Offset "k,l" selecting the bisection.
        #[arg(long)]
        offset: String,
    },
    /// Enumerate tilings by a set of tiles.
    Solve {
        file: String,
        /// Tile files (repeatable).
        #[arg(long = "tile", required = true)]
        tiles: Vec<String>,
        /// Allow rotations and reflections of the tiles.
        #[arg(long)]
        free: bool,
    },
    /// Normal-root candidates from single-tile tilings.
    Roots {
        file: String,
        /// Cell budget for candidate tiles.
        #[arg(long, default_value_t = 12)]
        max_cells: usize,
        /// Check an arbitrary candidate root word instead of enumerating.
        #[arg(long)]
        check: Option<String>,
    },
}

type CmdResult = std::result::Result<Value, Error>;

fn bigint_json(n: &num_bigint::BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn poly_json(p: &LPoly) -> Value {
    let terms: Vec<Value> = p
        .json_terms()
        .into_iter()
        .map(|(a, b, c)| json!([a, b, bigint_json(&c)]))
        .collect();
    json!({ "poly": p.to_string(), "terms": terms })
}

fn lattice_json(l: &Lattice) -> Value {
    match l {
        Lattice::Rank0 => json!({ "rank": 0 }),
        Lattice::Rank1 { gen } => json!({ "rank": 1, "generator": [gen.0, gen.1] }),
        Lattice::Rank2 { a, b, d } => json!({
            "rank": 2,
            "generators": [[a, 0], [b, d]],
            "index": a * d,
        }),
    }
}

fn verdict_json(v: &ObstructionVerdict) -> Value {
    match v {
        ObstructionVerdict::Obstructed => json!({ "verdict": "obstructed" }),
        ObstructionVerdict::Inconclusive { lattice, iota } => json!({
            "verdict": "inconclusive",
            "lattice": lattice_json(lattice),
            "iota": iota,
        }),
    }
}

fn region_json(r: &Region) -> Value {
    let cells: Vec<Value> = r.cells().map(|(i, j)| json!([i, j])).collect();
    json!(cells)
}

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParameter(format!("expected \"i,j\", got {s:?}")));
    }
    let i = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad integer in {s:?}")))?;
    let j = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad integer in {s:?}")))?;
    Ok((i, j))
}

fn load_region(path: &str) -> std::result::Result<Region, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
    Region::parse_ascii(&text)
}

fn run_invariant(word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    let p = winding_invariant(&w)?;
    Ok(json!({
        "command": "invariant",
        "word": w.to_string(),
        "poly": p.to_string(),
        "terms": poly_json(&p)["terms"],
        "theorem": "winding-numbers",
        "scope": "M2",
    }))
}

fn run_area(word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    let p = winding_invariant(&w)?;
    Ok(json!({
        "command": "area",
        "word": w.to_string(),
        "area": bigint_json(&p.area()),
        "theorem": "signed-area",
        "scope": "M2",
    }))
}

fn run_kappa(word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    let p = winding_invariant(&w)?;
    Ok(json!({
        "command": "kappa",
        "word": w.to_string(),
        "kappa": bigint_json(&p.kappa()),
        "theorem": "row-coloring",
        "scope": "M2",
    }))
}

fn run_fox(word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    let fp = fox_pair(&w);
    Ok(json!({
        "command": "fox",
        "word": w.to_string(),
        "dx": poly_json(&fp.dx),
        "dy": poly_json(&fp.dy),
        "identity_holds": fp.fundamental_identity_holds(&w),
        "theorem": "fox-derivative",
        "scope": "M2",
    }))
}

fn run_powers(args: &PowersArgs) -> CmdResult {
    let w = Word::parse(&args.word)?;
    match args.mode.as_str() {
        "decide" => {
            let witness = two_kth_powers_decide(&w, args.k)?;
            let witness_json = match &witness {
                None => Value::Null,
                Some(t) => json!({
                    "n": t.n,
                    "m": t.m,
                    "quotient": t.quotient.to_string(),
                    "a": t.a.to_string(),
                    "b": t.b.to_string(),
                }),
            };
            Ok(json!({
                "command": "powers",
                "k": args.k,
                "witness": witness_json,
                "theorem": "geometric-series-divisibility",
                "scope": "M2",
            }))
        }
        "area" => Ok(json!({
            "command": "powers",
            "k": args.k,
            "passes": power_area_test(&w, args.k)?,
            "theorem": "signed-area-divisibility",
            "scope": "necessary-only",
        })),
        "kappa" => {
            if args.k != 4 {
                return Err(Error::InvalidParameter(
                    "the row-coloring test applies to k = 4".into(),
                ));
            }
            Ok(json!({
                "command": "powers",
                "k": 4,
                "passes": fourth_power_kappa_test(&w)?,
                "theorem": "row-coloring-mod-4",
                "scope": "necessary-only",
            }))
        }
        "cyclic" => Ok(json!({
            "command": "powers",
            "k": args.k,
            "passes": two_pth_powers_cyclic_test(&w, args.k)?,
            "theorem": "cyclic-cayley-invariant",
            "scope": "necessary-only",
        })),
        "klein" => {
            if args.k != 2 {
                return Err(Error::InvalidParameter(
                    "the klein-four test applies to k = 2".into(),
                ));
            }
            Ok(json!({
                "command": "powers",
                "k": 2,
                "passes": two_squares_klein_test(&w)?,
                "theorem": "klein-four-invariant",
                "scope": "necessary-only",
            }))
        }
        _ => unreachable!(),
    }
}

fn run_cube(word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    Ok(json!({
        "command": "cube",
        "word": w.to_string(),
        "product_of_cubes": cube_product_decide(&w)?,
        "theorem": "signed-area-mod-3",
        "scope": "F2",
    }))
}

fn run_commutator(args: &CommutatorArgs, seed: u64) -> CmdResult {
    if let Some(pair) = &args.iota {
        let a = Word::parse(&pair[0])?;
        let b = Word::parse(&pair[1])?;
        let sign = iota(&a, &b);
        // sampled coset-sum verification of the parallelogram identity
        let c = Word::commutator(&a, &b);
        let p = winding_invariant(&c)?;
        let lattice = Lattice::from_generators(a.exponent_vector(), b.exponent_vector());
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut verified = true;
        for _ in 0..args.verify_samples {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let base = (((state >> 16) % 21) as i64 - 10, ((state >> 40) % 21) as i64 - 10);
            if lattice.coset_sum(&p, base) != num_bigint::BigInt::from(sign) {
                verified = false;
            }
        }
        return Ok(json!({
            "command": "commutator",
            "iota": sign,
            "lattice": lattice_json(&lattice),
            "coset_sums_verified": verified,
            "theorem": "parallelogram-orientation",
            "scope": "F2",
        }));
    }
    if let Some(poly) = &args.ab_squared {
        let p = LPoly::parse(poly)?;
        return Ok(json!({
            "command": "commutator",
            "mode": "ab-squared",
            "result": verdict_json(&ab_squared_obstruction(&p)),
            "theorem": "coset-sums",
            "scope": "M2",
        }));
    }
    if let Some(k) = args.simple {
        let p = LPoly::parse(args.simple_poly.as_ref().unwrap())?;
        let decided = simple_commutator_decide(&p, k)?;
        let result = match decided {
            None => Value::Null,
            Some((monomials, rest)) => json!({
                "monomials": monomials.iter().map(|&(n, m)| json!([n, m])).collect::<Vec<_>>(),
                "remainder": rest.to_string(),
            }),
        };
        return Ok(json!({
            "command": "commutator",
            "mode": "simple",
            "k": k,
            "result": result,
            "theorem": "monomial-shift-divisibility",
            "scope": "M2",
        }));
    }
    let poly = args.poly.as_ref().ok_or_else(|| {
        Error::InvalidParameter("one of --poly, --iota, --ab-squared, --simple is required".into())
    })?;
    let p = LPoly::parse(poly)?;
    Ok(json!({
        "command": "commutator",
        "mode": "obstruction",
        "result": verdict_json(&commutator_obstruction(&p, &[])),
        "theorem": "coset-sums",
        "scope": "M2",
    }))
}

fn run_gamma(m: u32, word: &str) -> CmdResult {
    let w = Word::parse(word)?;
    let membership = gamma_membership_mod_second_derived(&w, m)?;
    let decomposition = match &membership {
        None => Value::Null,
        Some(d) => json!(d
            .parts
            .iter()
            .map(|(q, l)| json!({ "q": q.to_string(), "x_power": l, "y_power": m - 2 - l }))
            .collect::<Vec<_>>()),
    };
    Ok(json!({
        "command": "gamma",
        "m": m,
        "member": membership.is_some(),
        "decomposition": decomposition,
        "theorem": "taylor-vanishing",
        "scope": "M2",
    }))
}

fn run_squares(args: &SquaresArgs) -> CmdResult {
    let w = Word::parse(&args.word)?;
    match args.mode.as_str() {
        "bounds" => {
            let (lo, hi) = square_length_bounds(&w)?;
            Ok(json!({
                "command": "squares",
                "mode": "bounds",
                "lo": lo,
                "hi": hi,
                "theorem": "square-length-bounds",
                "scope": "M2",
            }))
        }
        "three" => {
            let outcome = match three_squares_decide_partial(&w)? {
                ThreeSquares::Decomposed(u, v, z) => json!({
                    "verdict": "decomposed",
                    "factors": [u.to_string(), v.to_string(), z.to_string()],
                }),
                ThreeSquares::Obstructed => json!({ "verdict": "obstructed" }),
                ThreeSquares::Unknown => json!({ "verdict": "unknown" }),
            };
            Ok(json!({
                "command": "squares",
                "mode": "three",
                "result": outcome,
                "theorem": "coset-parity",
                "scope": "M2",
            }))
        }
        "five" => {
            let d = five_squares_decompose(&w)?;
            Ok(json!({
                "command": "squares",
                "mode": "five",
                "factors": d.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "verified": d.verify(),
                "theorem": "five-squares",
                "scope": "M2",
            }))
        }
        _ => unreachable!(),
    }
}

fn run_cl(args: &ClArgs) -> CmdResult {
    let p = match (&args.poly, &args.word) {
        (Some(s), _) => LPoly::parse(s)?,
        (None, Some(word)) => winding_invariant(&Word::parse(word)?)?,
        (None, None) => {
            return Err(Error::InvalidParameter("--poly or --word is required".into()))
        }
    };
    let d = cl2_decomposition(&p);
    Ok(json!({
        "command": "cl",
        "poly": p.to_string(),
        "c1": [d.c1.0.to_string(), d.c1.1.to_string()],
        "c2": [d.c2.0.to_string(), d.c2.1.to_string()],
        "theorem": "commutator-length-two",
        "scope": "M2",
    }))
}

fn run_engel(args: &EngelArgs) -> CmdResult {
    if let Some(p) = args.powers {
        let (b1, b2, b3) = engel_pth_decomposition(p)?;
        return Ok(json!({
            "command": "engel",
            "mode": "powers",
            "p": p,
            "factors": [b1.to_string(), b2.to_string(), b3.to_string()],
            "theorem": "three-pth-powers",
            "scope": "M2",
        }));
    }
    let n = args
        .n
        .ok_or_else(|| Error::InvalidParameter("--n WORD or --powers P required".into()))?;
    let w = Word::parse(args.word.as_ref().unwrap())?;
    Ok(json!({
        "command": "engel",
        "mode": "obstruction",
        "n": n,
        "obstructed": engel_verbal_obstruction(&w, n)?,
        "theorem": "taylor-factorial-divisibility",
        "scope": "M2",
    }))
}

fn run_ideal(args: &IdealArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.presentation)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", args.presentation)))?;
    let pres = Presentation::parse(&text)?;
    let config = GroebnerConfig { max_pairs: args.max_pairs };
    let basis = pres.groebner(config)?;
    let mut out = json!({
        "command": "ideal",
        "relators": pres.relators().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "theorem": "relation-module-ideal",
        "scope": "M2",
    });
    let obj = out.as_object_mut().unwrap();
    if args.quasi_perfect {
        obj.insert("quasi_perfect".into(), json!(basis.is_unit_ideal()));
    }
    if let Some(word) = &args.member_word {
        let p = winding_invariant(&Word::parse(word)?)?;
        obj.insert("member".into(), json!(basis.contains_laurent(&p)));
    }
    if let Some(poly) = &args.member_poly {
        let p = LPoly::parse(poly)?;
        obj.insert("member".into(), json!(basis.contains_laurent(&p)));
    }
    if let Some(word) = &args.class {
        let p = winding_invariant(&Word::parse(word)?)?;
        let nf = basis.laurent_normal_form(&p);
        obj.insert("normal_form".into(), json!(nf.to_string()));
        obj.insert("in_second_derived".into(), json!(nf.is_zero()));
    }
    if let Some(word) = &args.center {
        let w = Word::parse(word)?;
        obj.insert(
            "cannot_be_central".into(),
            json!(winding::ideals::center_obstruction(&pres, &w, config)?),
        );
    }
    Ok(out)
}

fn run_tile(cmd: &TileCommand) -> CmdResult {
    match cmd {
        TileCommand::Boundary { file, base } => {
            let r = load_region(file)?;
            let base = match base {
                Some(s) => parse_pair(s)?,
                None => r.canonical_base(),
            };
            let word = r.boundary_word(base)?;
            Ok(json!({
                "command": "tile boundary",
                "base": [base.0, base.1],
                "word": word.to_string(),
                "region_polynomial": r.polynomial().to_string(),
                "theorem": "boundary-winding",
                "scope": "F2",
            }))
        }
        TileCommand::Bisect { file, symmetry } => {
            let r = load_region(file)?;
            if *symmetry {
                let bis = r.symmetry_bisections()?;
                Ok(json!({
                    "command": "tile bisect",
                    "symmetry": true,
                    "bisections": bis.iter().map(|b| json!({
                        "transform": b.transform.name(),
                        "offset": [b.offset.0, b.offset.1],
                        "tile": region_json(&b.tile),
                    })).collect::<Vec<_>>(),
                    "theorem": "eight-symmetry-pairing",
                    "scope": "F2",
                }))
            } else {
                let bis = r.translate_bisections()?;
                Ok(json!({
                    "command": "tile bisect",
                    "symmetry": false,
                    "offsets": bis.iter().map(|(o, _)| json!([o.0, o.1])).collect::<Vec<_>>(),
                    "bisections": bis.iter().map(|(o, t)| json!({
                        "offset": [o.0, o.1],
                        "tile": region_json(t),
                    })).collect::<Vec<_>>(),
                    "theorem": "polynomial-divisibility",
                    "scope": "F2",
                }))
            }
        }
        TileCommand::TwoSquares { file, offset } => {
            let r = load_region(file)?;
            let offset = parse_pair(offset)?;
            let bis = r.translate_bisections()?;
            let Some((_, tile)) = bis.iter().find(|(o, _)| *o == offset) else {
                return Err(Error::InvalidParameter(format!(
                    "no translate bisection with offset {offset:?}"
                )));
            };
            let b = Bisection {
                tile: tile.clone(),
                transform: Transform::Identity,
                offset,
            };
            let (a, bb, base) = r.two_squares_identity(&b)?;
            Ok(json!({
                "command": "tile two-squares",
                "offset": [offset.0, offset.1],
                "base": [base.0, base.1],
                "a": a.to_string(),
                "b": bb.to_string(),
                "boundary": r.boundary_word(base)?.to_string(),
                "theorem": "two-squares-identity",
                "scope": "F2",
            }))
        }
        TileCommand::Solve { file, tiles, free } => {
            let r = load_region(file)?;
            let tile_regions: Vec<Region> = tiles
                .iter()
                .map(|t| load_region(t))
                .collect::<std::result::Result<_, _>>()?;
            let report = r.tilings_enumerate(&tile_regions, !free);
            Ok(json!({
                "command": "tile solve",
                "tilings": report.tilings.len(),
                "counts_invariant": report.counts_invariant,
                "count_vectors": report.tilings.iter().map(|t| json!(t.counts)).collect::<Vec<_>>(),
                "placements": report.tilings.iter().map(|t| json!(
                    t.placements.iter().map(|p| json!({
                        "tile": p.tile,
                        "cells": p.cells.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>()
                )).collect::<Vec<_>>(),
                "theorem": "tile-counting",
                "scope": "F2",
            }))
        }
        TileCommand::Roots { file, max_cells, check } => {
            let r = load_region(file)?;
            if let Some(root) = check {
                let root = Word::parse(root)?;
                let region_word = r.boundary_word(r.canonical_base())?;
                let inv = winding_invariant(&region_word)?;
                return Ok(json!({
                    "command": "tile roots",
                    "root": root.to_string(),
                    "divisibility_ok": winding::tilings::root_divides(&root, &inv)?,
                    "theorem": "invariant-divisibility",
                    "scope": "necessary-only",
                }));
            }
            let report = r.normal_root_candidates(*max_cells)?;
            Ok(json!({
                "command": "tile roots",
                "truncated": report.truncated,
                "candidates": report.candidates.iter().map(|c| json!({
                    "root": c.root.to_string(),
                    "cells": c.tile.cell_count(),
                    "divisibility_ok": c.divisibility_ok,
                })).collect::<Vec<_>>(),
                "theorem": "single-tile-tilings",
                "scope": "necessary-only",
            }))
        }
    }
}

fn render_text(value: &Value, indent: usize, out: &mut impl Write) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{}{}:", " ".repeat(indent), k);
                        render_text(v, indent + 2, out);
                    }
                    other => {
                        let _ = writeln!(out, "{}{}: {}", " ".repeat(indent), k, other);
                    }
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{}-", " ".repeat(indent));
                        render_text(v, indent + 2, out);
                    }
                    other => {
                        let _ = writeln!(out, "{}- {}", " ".repeat(indent), other);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}{}", " ".repeat(indent), other);
        }
    }
}

/// Runs the CLI on the given arguments, writing output to `out`; returns
/// the process exit code.
pub fn run<I, S>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Invariant { word } => run_invariant(word),
        Command::Area { word } => run_area(word),
        Command::Kappa { word } => run_kappa(word),
        Command::Fox { word } => run_fox(word),
        Command::Powers(args) => run_powers(args),
        Command::Cube { word } => run_cube(word),
        Command::Commutator(args) => run_commutator(args, cli.seed),
        Command::Gamma { m, word } => run_gamma(*m, word),
        Command::Squares(args) => run_squares(args),
        Command::Cl(args) => run_cl(args),
        Command::Engel(args) => run_engel(args),
        Command::Ideal(args) => run_ideal(args),
        Command::Tile(cmd) => run_tile(cmd),
    };
    match result {
        Ok(value) => {
            if cli.format == "text" {
                render_text(&value, 0, out);
            } else {
                let _ = writeln!(out, "{}", serde_json::to_string(&value).unwrap());
            }
            0
        }
        Err(e) => {
            let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            match e {
                Error::ResourceExceeded(_) => 3,
                _ => 2,
            }
        }
    }
}
