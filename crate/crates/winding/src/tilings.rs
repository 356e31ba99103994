//! Polyomino regions, boundary words, bisections and tilings.
//!
//! A region is a finite set of unit lattice cells that is edge-connected
//! and simply connected (homeomorphic to a disk). Its clockwise boundary
//! word `w` ties the combinatorics back to the invariant:
//! `W(w) = −X^{−p₁}Y^{−p₂}·P` where `P` is the region polynomial (sum of
//! `X^iY^j` over cells) and `p` the base vertex.
//!
//! Bisections — tilings by a tile and a congruent copy — are searched
//! completely: translate bisections through divisibility of the region
//! polynomial by `1 + X^kY^l`, general ones by constraint propagation over
//! the eight plane symmetries. A translate bisection exhibits the boundary
//! word as a product of two squares, literally in the free group; the
//! corresponding identity is produced and verified by free reduction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::One;

use crate::error::{Error, Result};
use crate::invariant::winding_invariant;
use crate::laurent::{big, LPoly};
use crate::words::{Gen, Word};

type Cell = (i64, i64);

/// A finite, edge-connected, simply connected set of unit cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Region {
    cells: BTreeSet<Cell>,
}

/// One of the eight plane symmetries fixing the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Transform {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    MirrorX,
    MirrorY,
    MirrorDiag,
    MirrorAnti,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rot90,
        Transform::Rot180,
        Transform::Rot270,
        Transform::MirrorX,
        Transform::MirrorY,
        Transform::MirrorDiag,
        Transform::MirrorAnti,
    ];

    /// Image of the unit cell with corner `(i, j)` under the plane map.
    pub fn apply_cell(self, (i, j): Cell) -> Cell {
        match self {
            Transform::Identity => (i, j),
            Transform::Rot90 => (-j - 1, i),
            Transform::Rot180 => (-i - 1, -j - 1),
            Transform::Rot270 => (j, -i - 1),
            Transform::MirrorX => (-i - 1, j),
            Transform::MirrorY => (i, -j - 1),
            Transform::MirrorDiag => (j, i),
            Transform::MirrorAnti => (-j - 1, -i - 1),
        }
    }

    pub fn inverse(self) -> Transform {
        match self {
            Transform::Rot90 => Transform::Rot270,
            Transform::Rot270 => Transform::Rot90,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Identity => "identity",
            Transform::Rot90 => "rot90",
            Transform::Rot180 => "rot180",
            Transform::Rot270 => "rot270",
            Transform::MirrorX => "mirror-x",
            Transform::MirrorY => "mirror-y",
            Transform::MirrorDiag => "mirror-diag",
            Transform::MirrorAnti => "mirror-anti",
        }
    }
}

/// A tiling of a region by a tile and a congruent copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisection {
    pub tile: Region,
    pub transform: Transform,
    pub offset: Cell,
}

impl Region {
    /// Validates connectivity and simple connectivity; cell coordinates are
    /// kept as given.
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Region> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let region = Region { cells };
        if !region.edge_connected() {
            return Err(Error::NotConnected);
        }
        if !region.simply_connected() {
            return Err(Error::NotSimplyConnected);
        }
        Ok(region)
    }

    /// ASCII grid: `#` is a cell, `.` empty, the last line is row 0; the
    /// result is canonicalized with the minimum cell at the origin.
    pub fn parse_ascii(text: &str) -> Result<Region> {
        let lines: Vec<&str> = text.lines().collect();
        let height = lines.len() as i64;
        let mut cells = BTreeSet::new();
        for (li, line) in lines.iter().enumerate() {
            let row = height - 1 - li as i64;
            for (ci, ch) in line.chars().enumerate() {
                match ch {
                    '#' => {
                        cells.insert((ci as i64, row));
                    }
                    '.' | ' ' => {}
                    other => {
                        return Err(Error::RegionSyntax(format!(
                            "unexpected {other:?} in row {row}"
                        )))
                    }
                }
            }
        }
        Ok(Region::new(cells)?.canonical())
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Translate so the bounding box corner sits at the origin.
    pub fn canonical(&self) -> Region {
        let mi = self.cells.iter().map(|c| c.0).min().unwrap();
        let mj = self.cells.iter().map(|c| c.1).min().unwrap();
        self.translated(-mi, -mj)
    }

    pub fn translated(&self, di: i64, dj: i64) -> Region {
        Region {
            cells: self.cells.iter().map(|&(i, j)| (i + di, j + dj)).collect(),
        }
    }

    pub fn transformed(&self, t: Transform) -> Region {
        Region {
            cells: self.cells.iter().map(|&c| t.apply_cell(c)).collect(),
        }
    }

    fn edge_connected(&self) -> bool {
        let start = *self.cells.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((i, j)) = queue.pop_front() {
            for n in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if self.cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    fn simply_connected(&self) -> bool {
        // complement within the padded bounding box must be connected
        let min_i = self.cells.iter().map(|c| c.0).min().unwrap() - 1;
        let max_i = self.cells.iter().map(|c| c.0).max().unwrap() + 1;
        let min_j = self.cells.iter().map(|c| c.1).min().unwrap() - 1;
        let max_j = self.cells.iter().map(|c| c.1).max().unwrap() + 1;
        let in_box =
            |(i, j): Cell| i >= min_i && i <= max_i && j >= min_j && j <= max_j;
        let start = (min_i, min_j);
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((i, j)) = queue.pop_front() {
            for n in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if in_box(n) && !self.cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let box_cells = ((max_i - min_i + 1) * (max_j - min_j + 1)) as usize;
        seen.len() == box_cells - self.cells.len()
    }

    /// The region polynomial: `Σ X^i Y^j` over cells.
    pub fn polynomial(&self) -> LPoly {
        let mut p = LPoly::zero();
        for &(i, j) in &self.cells {
            p.add_term(i, j, big(1));
        }
        p
    }

    /// Directed boundary edges with the region on the right (clockwise
    /// traversal), keyed by their start vertex.
    fn boundary_steps(&self) -> BTreeMap<Cell, Vec<Cell>> {
        let mut steps: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
        let has = |c: Cell| self.cells.contains(&c);
        for &(i, j) in &self.cells {
            // up along x = i when (i, j) in, (i−1, j) out
            if !has((i - 1, j)) {
                steps.entry((i, j)).or_default().push((0, 1));
            }
            // down along x = i+1 when (i, j) in, (i+1, j) out
            if !has((i + 1, j)) {
                steps.entry((i + 1, j + 1)).or_default().push((0, -1));
            }
            // right along y = j+1 when (i, j) in, (i, j+1) out
            if !has((i, j + 1)) {
                steps.entry((i, j + 1)).or_default().push((1, 0));
            }
            // left along y = j when (i, j) in, (i, j−1) out
            if !has((i, j - 1)) {
                steps.entry((i + 1, j)).or_default().push((-1, 0));
            }
        }
        steps
    }

    /// Vertices on the boundary.
    pub fn boundary_vertices(&self) -> BTreeSet<Cell> {
        self.boundary_steps().keys().copied().collect()
    }

    /// The lexicographically smallest boundary vertex, the default base.
    pub fn canonical_base(&self) -> Cell {
        *self.boundary_steps().keys().next().unwrap()
    }

    /// Clockwise boundary word from a base vertex; satisfies
    /// `W(word) = −X^{−base.0}Y^{−base.1}·polynomial()`.
    pub fn boundary_word(&self, base: Cell) -> Result<Word> {
        Ok(self.boundary_path(base)?.0)
    }

    /// Boundary word plus the visited vertex sequence (one entry per
    /// letter, the vertex the letter starts from).
    fn boundary_path(&self, base: Cell) -> Result<(Word, Vec<Cell>)> {
        let steps = self.boundary_steps();
        if !steps.contains_key(&base) {
            return Err(Error::BaseNotOnBoundary);
        }
        let mut word = Word::empty();
        let mut visited = Vec::new();
        let mut pos = base;
        loop {
            let dirs = steps.get(&pos).ok_or(Error::BaseNotOnBoundary)?;
            // a disk region has no pinch vertices: exactly one outgoing edge
            debug_assert_eq!(dirs.len(), 1, "pinch vertex at {pos:?}");
            let (dx, dy) = dirs[0];
            let (g, e) = match (dx, dy) {
                (1, 0) => (Gen::X, 1),
                (-1, 0) => (Gen::X, -1),
                (0, 1) => (Gen::Y, 1),
                _ => (Gen::Y, -1),
            };
            word.push_run(g, e);
            visited.push(pos);
            pos = (pos.0 + dx, pos.1 + dy);
            if pos == base {
                break;
            }
        }
        Ok((word, visited))
    }

    /// All bisections into a tile and a translate, reported as
    /// `(offset, tile)` with the offset in the upper half-plane; complete
    /// via divisibility of the region polynomial by `1 + X^kY^l`.
    pub fn translate_bisections(&self) -> Result<Vec<(Cell, Region)>> {
        if self.cell_count() % 2 != 0 {
            return Err(Error::OddCellCount);
        }
        let p = self.polynomial();
        let (wx, wy) = p.widths();
        let mut out = Vec::new();
        for k in 0..=wx {
            for l in -wy..=wy {
                if (k == 0 && l <= 0) || (k > 0 && l.abs() > wy) {
                    continue;
                }
                let divisor = &LPoly::one() + &LPoly::monomial(k, l);
                let Ok(Some(q)) = p.exact_divide(&divisor) else {
                    continue;
                };
                if !q.terms().all(|(_, c)| c.is_one()) {
                    continue;
                }
                let Ok(tile) = Region::new(q.support()) else {
                    continue;
                };
                out.push(((k, l), tile));
            }
        }
        out.sort_by_key(|&(offset, _)| offset);
        Ok(out)
    }

    /// All bisections into a tile and a congruent copy under any of the
    /// eight symmetries, deduplicated by `(transform, partition)`.
    pub fn symmetry_bisections(&self) -> Result<Vec<Bisection>> {
        if self.cell_count() % 2 != 0 {
            return Err(Error::OddCellCount);
        }
        let cells: Vec<Cell> = self.cells().collect();
        let mut found: BTreeSet<(u8, Vec<Cell>)> = BTreeSet::new();
        let mut out = Vec::new();
        for (t_idx, &t) in Transform::ALL.iter().enumerate() {
            let mut offsets = BTreeSet::new();
            for &c in &cells {
                let img = t.apply_cell(c);
                for &c2 in &cells {
                    offsets.insert((c2.0 - img.0, c2.1 - img.1));
                }
            }
            for &offset in &offsets {
                for tile_cells in pair_assignments(&cells, t, offset) {
                    let Ok(tile) = Region::new(tile_cells.iter().copied()) else {
                        continue;
                    };
                    let partition_key = tile_cells.clone();
                    let cotile: Vec<Cell> = cells
                        .iter()
                        .copied()
                        .filter(|c| !tile_cells.contains(c))
                        .collect();
                    // canonical key: the half that contains the smallest cell
                    let key_cells = if tile_cells.contains(&cells[0]) {
                        partition_key
                    } else {
                        cotile
                    };
                    if found.insert((t_idx as u8, key_cells)) {
                        out.push(Bisection { tile, transform: t, offset });
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            (a.transform, a.offset, a.tile.cells.iter().next())
                .cmp(&(b.transform, b.offset, b.tile.cells.iter().next()))
        });
        Ok(out)
    }

    /// Verifies the two-piece cover of a bisection.
    pub fn bisection_is_valid(&self, b: &Bisection) -> bool {
        let image = b.tile.transformed(b.transform).translated(b.offset.0, b.offset.1);
        if b.tile.cells.intersection(&image.cells).next().is_some() {
            return false;
        }
        let union: BTreeSet<Cell> = b.tile.cells.union(&image.cells).copied().collect();
        union == self.cells
    }

    /// For a translate bisection, the boundary word of the region as a
    /// product of two squares: returns `(a, b)` with the free reduction of
    /// `a²b²` equal to the boundary word from the chosen base vertex, and
    /// the base vertex itself.
    pub fn two_squares_identity(&self, b: &Bisection) -> Result<(Word, Word, Cell)> {
        if b.transform != Transform::Identity {
            return Err(Error::NotTranslateBisection);
        }
        let tile = &b.tile;
        let delta = b.offset;
        let tile_boundary = tile.boundary_vertices();
        let region_boundary = self.boundary_vertices();
        for &p in tile_boundary.intersection(&region_boundary) {
            for q in [
                (p.0 + delta.0, p.1 + delta.1),
                (p.0 - delta.0, p.1 - delta.1),
            ] {
                if !tile_boundary.contains(&q) {
                    continue;
                }
                let (tw, visited) = tile.boundary_path(p)?;
                let Some(split) = visited.iter().position(|&v| v == q) else {
                    continue;
                };
                if split == 0 {
                    continue;
                }
                let letters: Vec<(Gen, i64)> = tw.letters().collect();
                let mut a = Word::empty();
                let mut bb = Word::empty();
                for (idx, &(g, s)) in letters.iter().enumerate() {
                    if idx < split {
                        a.push_run(g, s);
                    } else {
                        bb.push_run(g, s);
                    }
                }
                let target = self.boundary_word(p)?;
                // q = p + delta: w_Γ = A²B²; q = p − delta: w_Γ = (AB·B)(B⁻¹)² form
                let candidates = [
                    (a.clone(), bb.clone()),
                    (tw.concat(&bb), bb.inverse()),
                ];
                for (ca, cb) in candidates {
                    if ca.pow(2).concat(&cb.pow(2)) == target {
                        return Ok((ca, cb, p));
                    }
                }
            }
        }
        unreachable!("every translate bisection yields a two-squares identity")
    }

    /// All tilings by translated (optionally rotated/reflected) copies of
    /// the given tiles, by backtracking over the lowest-leftmost uncovered
    /// cell.
    pub fn tilings_enumerate(&self, tiles: &[Region], translates_only: bool) -> TilingReport {
        // orientations per tile type, deduplicated up to translation
        let mut oriented: Vec<Vec<(usize, Vec<Cell>)>> = Vec::new();
        for (idx, t) in tiles.iter().enumerate() {
            let mut seen = BTreeSet::new();
            let mut forms = Vec::new();
            let transforms: &[Transform] = if translates_only {
                &[Transform::Identity]
            } else {
                &Transform::ALL
            };
            for &tr in transforms {
                let canon = t.transformed(tr).canonical();
                if seen.insert(canon.cells.clone()) {
                    forms.push((idx, canon.cells.into_iter().collect::<Vec<Cell>>()));
                }
            }
            oriented.push(forms);
        }
        let order: Vec<Cell> = {
            let mut v: Vec<Cell> = self.cells().collect();
            v.sort_by_key(|&(i, j)| (j, i));
            v
        };
        let mut covered: BTreeSet<Cell> = BTreeSet::new();
        let mut placements: Vec<Placement> = Vec::new();
        let mut tilings: Vec<Tiling> = Vec::new();
        fn recurse(
            region: &Region,
            order: &[Cell],
            oriented: &[Vec<(usize, Vec<Cell>)>],
            covered: &mut BTreeSet<Cell>,
            placements: &mut Vec<Placement>,
            tilings: &mut Vec<Tiling>,
            n_types: usize,
        ) {
            let Some(&target) = order.iter().find(|c| !covered.contains(c)) else {
                let mut counts = vec![0usize; n_types];
                for p in placements.iter() {
                    counts[p.tile] += 1;
                }
                tilings.push(Tiling {
                    placements: placements.clone(),
                    counts,
                });
                return;
            };
            for forms in oriented {
                for (tile_idx, cells) in forms {
                    for &anchor in cells {
                        let off = (target.0 - anchor.0, target.1 - anchor.1);
                        let placed: Vec<Cell> = cells
                            .iter()
                            .map(|&(i, j)| (i + off.0, j + off.1))
                            .collect();
                        if placed
                            .iter()
                            .all(|c| region.contains(*c) && !covered.contains(c))
                        {
                            for &c in &placed {
                                covered.insert(c);
                            }
                            placements.push(Placement {
                                tile: *tile_idx,
                                cells: placed.clone(),
                            });
                            recurse(region, order, oriented, covered, placements, tilings, n_types);
                            placements.pop();
                            for c in &placed {
                                covered.remove(c);
                            }
                        }
                    }
                }
            }
        }
        recurse(
            self,
            &order,
            &oriented,
            &mut covered,
            &mut placements,
            &mut tilings,
            tiles.len(),
        );
        let counts_invariant = tilings
            .windows(2)
            .all(|w| w[0].counts == w[1].counts);
        TilingReport { tilings, counts_invariant }
    }

    /// Normal-root candidates from single-tile translate tilings.
    ///
    /// Enumerates connected, simply connected subregions containing the
    /// lowest-leftmost cell, with cell count dividing the region's and at
    /// most `max_cells` (a budget; `truncated` is set when it bites). Each
    /// tile that tiles the region contributes its boundary word, together
    /// with the invariant divisibility flag `W(root) | W(boundary)`.
    pub fn normal_root_candidates(&self, max_cells: usize) -> Result<RootReport> {
        let total = self.cell_count();
        let base_cell = {
            let mut v: Vec<Cell> = self.cells().collect();
            v.sort_by_key(|&(i, j)| (j, i));
            v[0]
        };
        let region_word = self.boundary_word(self.canonical_base())?;
        let region_inv = winding_invariant(&region_word)?;
        let mut truncated = false;
        let mut out = Vec::new();
        let mut seen_canon: BTreeSet<Vec<Cell>> = BTreeSet::new();
        // enumerate connected subsets containing base_cell
        let all: Vec<Cell> = self.cells().collect();
        let index: BTreeMap<Cell, usize> = all.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut stack = vec![(vec![base_cell], BTreeSet::from([base_cell]), BTreeSet::<usize>::new())];
        while let Some((subset, subset_set, banned)) = stack.pop() {
            if subset.len() > max_cells {
                truncated = true;
                continue;
            }
            if total % subset.len() == 0 {
                if let Ok(tile) = Region::new(subset.iter().copied()) {
                    let canon: Vec<Cell> = tile.canonical().cells().collect();
                    if seen_canon.insert(canon) {
                        let report = self.tilings_enumerate(std::slice::from_ref(&tile), true);
                        if !report.tilings.is_empty() {
                            let root = tile.boundary_word(tile.canonical_base())?;
                            let divisibility_ok =
                                root_divides(&root, &region_inv).unwrap_or(false);
                            out.push(RootCandidate { root, tile, divisibility_ok });
                        }
                    }
                }
            }
            // frontier extension with banning for uniqueness
            let mut frontier: Vec<usize> = Vec::new();
            for &c in &subset {
                for n in [
                    (c.0 + 1, c.1),
                    (c.0 - 1, c.1),
                    (c.0, c.1 + 1),
                    (c.0, c.1 - 1),
                ] {
                    if let Some(&ni) = index.get(&n) {
                        if !subset_set.contains(&n) && !banned.contains(&ni) {
                            frontier.push(ni);
                        }
                    }
                }
            }
            frontier.sort_unstable();
            frontier.dedup();
            let mut new_banned = banned.clone();
            for ni in frontier {
                let mut next = subset.clone();
                let mut next_set = subset_set.clone();
                next.push(all[ni]);
                next_set.insert(all[ni]);
                stack.push((next, next_set, new_banned.clone()));
                new_banned.insert(ni);
            }
        }
        out.sort_by_key(|c| (c.tile.cell_count(), c.root.to_string()));
        Ok(RootReport { candidates: out, truncated })
    }
}

/// Whether `W(root)` divides `region_invariant` in the Laurent ring.
pub fn root_divides(root: &Word, region_invariant: &LPoly) -> Result<bool> {
    let root_inv = winding_invariant(root)?;
    if root_inv.is_zero() {
        return Ok(region_invariant.is_zero());
    }
    Ok(region_invariant.exact_divide(&root_inv)?.is_some())
}

/// Constraint propagation: all partitions of `cells` into `A ⊔ B` with
/// `B = t(A) + offset`, returned as the sorted cell lists of `A`.
fn pair_assignments(cells: &[Cell], t: Transform, offset: Cell) -> Vec<Vec<Cell>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Side {
        A,
        B,
    }
    let cell_set: BTreeSet<Cell> = cells.iter().copied().collect();
    let tinv = t.inverse();
    let phi = |c: Cell| {
        let i = t.apply_cell(c);
        (i.0 + offset.0, i.1 + offset.1)
    };
    let phi_inv = |c: Cell| tinv.apply_cell((c.0 - offset.0, c.1 - offset.1));
    let mut results = Vec::new();
    let mut assignment: BTreeMap<Cell, Side> = BTreeMap::new();

    fn propagate(
        seed: Cell,
        side: Side,
        cell_set: &BTreeSet<Cell>,
        phi: &impl Fn(Cell) -> Cell,
        phi_inv: &impl Fn(Cell) -> Cell,
        assignment: &mut BTreeMap<Cell, Side>,
        touched: &mut Vec<Cell>,
    ) -> bool {
        let mut queue = vec![(seed, side)];
        while let Some((c, s)) = queue.pop() {
            match assignment.get(&c) {
                Some(&existing) => {
                    if existing != s {
                        return false;
                    }
                    continue;
                }
                None => {
                    assignment.insert(c, s);
                    touched.push(c);
                }
            }
            let partner = match s {
                Side::A => phi(c),
                Side::B => phi_inv(c),
            };
            if !cell_set.contains(&partner) {
                return false;
            }
            queue.push((
                partner,
                match s {
                    Side::A => Side::B,
                    Side::B => Side::A,
                },
            ));
        }
        true
    }

    fn search(
        cells: &[Cell],
        cell_set: &BTreeSet<Cell>,
        phi: &impl Fn(Cell) -> Cell,
        phi_inv: &impl Fn(Cell) -> Cell,
        assignment: &mut BTreeMap<Cell, Side>,
        results: &mut Vec<Vec<Cell>>,
    ) {
        let Some(&next) = cells.iter().find(|c| !assignment.contains_key(c)) else {
            let a: Vec<Cell> = cells
                .iter()
                .copied()
                .filter(|c| assignment.get(c) == Some(&Side::A))
                .collect();
            if a.len() * 2 == cells.len() {
                results.push(a);
            }
            return;
        };
        for side in [Side::A, Side::B] {
            let mut touched = Vec::new();
            if propagate(next, side, cell_set, phi, phi_inv, assignment, &mut touched) {
                search(cells, cell_set, phi, phi_inv, assignment, results);
            }
            for c in touched {
                assignment.remove(&c);
            }
        }
    }

    search(cells, &cell_set, &phi, &phi_inv, &mut assignment, &mut results);
    results.sort();
    results.dedup();
    results
}

/// One placed tile inside a tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    /// Index into the tile list.
    pub tile: usize,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub placements: Vec<Placement>,
    /// Number of copies of each tile type.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingReport {
    pub tilings: Vec<Tiling>,
    /// Whether all tilings use the same count vector.
    pub counts_invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCandidate {
    pub root: Word,
    pub tile: Region,
    pub divisibility_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub candidates: Vec<RootCandidate>,
    pub truncated: bool,
}

/// The two-column staircase used throughout the tiling examples: column 0
/// rows 0–3, column 1 rows 1–4.
pub fn staircase_example() -> Region {
    Region::new((0..4).map(|j| (0, j)).chain((1..5).map(|j| (1, j)))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_ascii_examples() {
        let r = Region::parse_ascii("#").unwrap();
        assert_eq!(r.cells().collect::<Vec<_>>(), vec![(0, 0)]);
        let stair = Region::parse_ascii(".#\n##\n##\n##\n#.").unwrap();
        assert_eq!(stair.cell_count(), 8);
        assert_eq!(stair, staircase_example());
        let ring = Region::parse_ascii("###\n#.#\n###");
        assert!(matches!(ring, Err(Error::NotSimplyConnected)));
        assert!(matches!(Region::parse_ascii("..."), Err(Error::EmptyRegion)));
        assert!(matches!(
            Region::parse_ascii("#.#"),
            Err(Error::NotConnected)
        ));
        assert!(Region::parse_ascii("#?").is_err());
    }

    #[test]
    fn boundary_word_unit_square() {
        let r = Region::new([(0, 0)]).unwrap();
        assert_eq!(r.boundary_word((0, 0)).unwrap(), w("yxYX"));
        assert!(matches!(
            r.boundary_word((5, 5)),
            Err(Error::BaseNotOnBoundary)
        ));
    }

    #[test]
    fn boundary_word_staircase() {
        let r = staircase_example();
        assert_eq!(r.boundary_word((0, 0)).unwrap(), w("y^4xyxY^4XYX"));
    }

    #[test]
    fn boundary_word_domino() {
        let r = Region::new([(0, 0), (0, 1)]).unwrap();
        assert_eq!(r.boundary_word((0, 0)).unwrap(), w("y^2xY^2X"));
    }

    #[test]
    fn boundary_invariant_relation() {
        for r in [
            staircase_example(),
            Region::new([(0, 0), (1, 0), (1, 1)]).unwrap(),
            Region::new([(2, 3), (3, 3), (4, 3), (3, 4)]).unwrap(),
        ] {
            for &base in r.boundary_vertices().iter().take(4) {
                let word = r.boundary_word(base).unwrap();
                let winv = winding_invariant(&word).unwrap();
                let expected = r.polynomial().mul_monomial(-base.0, -base.1).neg_ref();
                assert_eq!(winv, expected);
            }
        }
    }

    #[test]
    fn translate_bisections_staircase() {
        let r = staircase_example();
        let bis = r.translate_bisections().unwrap();
        let offsets: Vec<Cell> = bis.iter().map(|&(o, _)| o).collect();
        assert_eq!(offsets, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn translate_bisections_domino() {
        let r = Region::new([(0, 0), (0, 1)]).unwrap();
        let bis = r.translate_bisections().unwrap();
        assert_eq!(bis.len(), 1);
        assert_eq!(bis[0].0, (0, 1));
        assert_eq!(bis[0].1.cell_count(), 1);
        let tromino = Region::new([(0, 0), (1, 0), (1, 1)]).unwrap();
        assert!(matches!(
            tromino.translate_bisections(),
            Err(Error::OddCellCount)
        ));
    }

    #[test]
    fn bisection_polynomial_relation() {
        let r = staircase_example();
        for (offset, tile) in r.translate_bisections().unwrap() {
            let lhs = r.polynomial();
            let rhs = &(&LPoly::one() + &LPoly::monomial(offset.0, offset.1)) * &tile.polynomial();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symmetry_bisections_square() {
        let square = Region::parse_ascii("##\n##").unwrap();
        let bis = square.symmetry_bisections().unwrap();
        for b in &bis {
            assert!(square.bisection_is_valid(b), "{b:?}");
        }
        // contains the two translate bisections (horizontal + vertical dominoes)
        let identity_partitions: BTreeSet<Vec<Cell>> = bis
            .iter()
            .filter(|b| b.transform == Transform::Identity)
            .map(|b| b.tile.cells().collect())
            .collect();
        assert_eq!(identity_partitions.len(), 2);
        // brute force oracle over all half-size subsets
        let cells: Vec<Cell> = square.cells().collect();
        let mut oracle = 0usize;
        for mask in 0u32..(1 << cells.len()) {
            if mask.count_ones() as usize != cells.len() / 2 {
                continue;
            }
            let a: BTreeSet<Cell> = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            if !a.contains(&cells[0]) {
                continue; // fix the side containing the first cell
            }
            let b: BTreeSet<Cell> = cells.iter().filter(|c| !a.contains(c)).copied().collect();
            if Region::new(a.iter().copied()).is_err() {
                continue;
            }
            let mut matches = BTreeSet::new();
            for (ti, &t) in Transform::ALL.iter().enumerate() {
                let ta: BTreeSet<Cell> = a.iter().map(|&c| t.apply_cell(c)).collect();
                let off_candidates: BTreeSet<Cell> = {
                    let ta0 = *ta.iter().next().unwrap();
                    b.iter().map(|&c| (c.0 - ta0.0, c.1 - ta0.1)).collect()
                };
                for off in off_candidates {
                    let shifted: BTreeSet<Cell> =
                        ta.iter().map(|&c| (c.0 + off.0, c.1 + off.1)).collect();
                    if shifted == b {
                        matches.insert(ti);
                    }
                }
            }
            oracle += matches.len();
        }
        assert_eq!(bis.len(), oracle);
    }

    #[test]
    fn symmetry_contains_translate() {
        let r = staircase_example();
        let translate: BTreeSet<Vec<Cell>> = r
            .translate_bisections()
            .unwrap()
            .into_iter()
            .map(|(_, t)| t.cells().collect())
            .collect();
        let from_symmetry: BTreeSet<Vec<Cell>> = r
            .symmetry_bisections()
            .unwrap()
            .into_iter()
            .filter(|b| b.transform == Transform::Identity)
            .map(|b| {
                // normalize to the half containing the minimum cell of r
                let min = r.cells().next().unwrap();
                if b.tile.contains(min) {
                    b.tile.cells().collect()
                } else {
                    r.cells().filter(|c| !b.tile.contains(*c)).collect()
                }
            })
            .collect();
        for t in &translate {
            let complement: Vec<Cell> = r.cells().filter(|c| !t.contains(c)).collect();
            assert!(
                from_symmetry.contains(t) || from_symmetry.contains(&complement),
                "missing translate bisection {t:?}"
            );
        }
    }

    #[test]
    fn two_squares_staircase() {
        let r = staircase_example();
        let bis = r.translate_bisections().unwrap();
        for (offset, tile) in bis {
            let b = Bisection { tile, transform: Transform::Identity, offset };
            let (a, bb, base) = r.two_squares_identity(&b).unwrap();
            let target = r.boundary_word(base).unwrap();
            assert_eq!(a.pow(2).concat(&bb.pow(2)), target, "offset {offset:?}");
            if offset == (0, 2) {
                assert_eq!(a, w("y^2"));
            }
            if offset == (1, 1) {
                assert_eq!(a, w("y^4xY^3"));
            }
        }
    }

    #[test]
    fn two_squares_domino() {
        let r = Region::new([(0, 0), (0, 1)]).unwrap();
        let bis = r.translate_bisections().unwrap();
        let b = Bisection {
            tile: bis[0].1.clone(),
            transform: Transform::Identity,
            offset: bis[0].0,
        };
        let (a, bb, base) = r.two_squares_identity(&b).unwrap();
        assert_eq!(a.pow(2).concat(&bb.pow(2)), r.boundary_word(base).unwrap());
        let rot = Bisection {
            tile: b.tile.clone(),
            transform: Transform::Rot180,
            offset: (0, 0),
        };
        assert!(matches!(
            r.two_squares_identity(&rot),
            Err(Error::NotTranslateBisection)
        ));
    }

    #[test]
    fn tilings_two_by_two() {
        let square = Region::parse_ascii("##\n##").unwrap();
        let domino = Region::new([(0, 0), (0, 1)]).unwrap();
        let report = square.tilings_enumerate(&[domino], false);
        assert_eq!(report.tilings.len(), 2);
        assert!(report.counts_invariant);
    }

    #[test]
    fn tilings_two_by_three() {
        let rect = Region::parse_ascii("###\n###").unwrap();
        let domino = Region::new([(0, 0), (0, 1)]).unwrap();
        let report = rect.tilings_enumerate(&[domino], false);
        assert_eq!(report.tilings.len(), 3);
    }

    #[test]
    fn counts_can_differ() {
        // dominoes and L-trominoes tile a 4x4 square with different counts
        let square = Region::parse_ascii("####\n####\n####\n####").unwrap();
        let domino = Region::new([(0, 0), (0, 1)]).unwrap();
        let tromino = Region::new([(0, 0), (1, 0), (0, 1)]).unwrap();
        let report = square.tilings_enumerate(&[domino, tromino], false);
        assert!(!report.tilings.is_empty());
        assert!(!report.counts_invariant);
        let vectors: BTreeSet<Vec<usize>> =
            report.tilings.iter().map(|t| t.counts.clone()).collect();
        assert!(vectors.contains(&vec![8, 0]));
        assert!(vectors.contains(&vec![2, 4]));
    }

    #[test]
    fn normal_roots_domino() {
        let r = Region::new([(0, 0), (0, 1)]).unwrap();
        let report = r.normal_root_candidates(12).unwrap();
        assert!(!report.truncated);
        let roots: BTreeSet<String> =
            report.candidates.iter().map(|c| c.root.to_string()).collect();
        assert!(roots.contains("yxYX"));
        assert!(roots.contains("y^2xY^2X"));
        assert!(report.candidates.iter().all(|c| c.divisibility_ok));
    }

    #[test]
    fn normal_roots_square() {
        let square = Region::parse_ascii("##\n##").unwrap();
        let report = square.normal_root_candidates(12).unwrap();
        let sizes: BTreeSet<usize> = report
            .candidates
            .iter()
            .map(|c| c.tile.cell_count())
            .collect();
        assert!(sizes.contains(&1));
        assert!(sizes.contains(&2));
        assert!(sizes.contains(&4));
        assert!(report.candidates.iter().all(|c| c.divisibility_ok));
    }

    #[test]
    fn truncation_flag() {
        let rect = Region::parse_ascii("####\n####").unwrap();
        let report = rect.normal_root_candidates(2).unwrap();
        assert!(report.truncated);
    }
}
