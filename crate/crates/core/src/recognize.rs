//! Small-scale oracles: exhaustive search for realizations of a graph on an
//! integer grid, realization checking for arbitrary point sets, and search
//! for grid placements of an incidence pattern.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::projgeom::ProjPoint;
use crate::visibility::{blocker, visibility_graph, PointSet, VisibilityGraph};

pub const DEFAULT_VERTEX_CAP: usize = 9;
pub const DEFAULT_GRID_CAP: usize = 12;

type Cell = (i64, i64);

fn cross(a: Cell, b: Cell, c: Cell) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_open(a: Cell, b: Cell, c: Cell) -> bool {
    cross(a, b, c) == 0 && (c.0 - a.0) * (c.0 - b.0) + (c.1 - a.1) * (c.1 - b.1) < 0
}

fn lattice_gcd(a: Cell, b: Cell) -> i64 {
    (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SearchStatus {
    Found,
    Exhausted,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "FOUND",
            SearchStatus::Exhausted => "EXHAUSTED",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Partial placements that survived pruning.
    pub nodes: u64,
    pub prunes: u64,
    /// Complete placements accepted.
    pub realizations: u64,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
        self.realizations += o.realizations;
    }
}

/// Search for a point set on `{0..k-1}^2` whose visibility graph is `target`
/// with the target's own labels.
#[derive(Clone, Debug)]
pub struct RealizationQuery {
    pub target: VisibilityGraph,
    pub k: usize,
    /// Keep only placements whose bounding box touches both axes and whose
    /// first placed vertex lies in the left half of the grid.
    pub symmetry_breaking: bool,
    /// Vertex groups that must share a y-coordinate.
    pub same_row: Vec<Vec<usize>>,
    /// Collect every realization instead of stopping at the first.
    pub enumerate_all: bool,
    pub parallel: bool,
    pub vertex_cap: usize,
    pub grid_cap: usize,
}

impl RealizationQuery {
    pub fn new(target: VisibilityGraph, k: usize) -> Self {
        RealizationQuery {
            target,
            k,
            symmetry_breaking: true,
            same_row: Vec::new(),
            enumerate_all: false,
            parallel: false,
            vertex_cap: DEFAULT_VERTEX_CAP,
            grid_cap: DEFAULT_GRID_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub realization: Option<PointSet>,
    /// Every accepted realization, in search order, when enumerating.
    pub all: Vec<PointSet>,
    pub stats: SearchStats,
}

fn to_point_set(labels: &[String], cells: &[Cell]) -> PointSet {
    let pts = cells.iter().map(|&(x, y)| ProjPoint::int(x, y)).collect();
    PointSet::new(labels.to_vec(), pts).expect("distinct grid cells")
}

struct GridSearch<'q> {
    q: &'q RealizationQuery,
    n: usize,
    order: Vec<usize>,
    edge: Vec<Vec<bool>>,
    row: Vec<Option<usize>>,
}

struct State {
    pos: Vec<Option<Cell>>,
    stats: SearchStats,
    found: Vec<Vec<Cell>>,
}

impl<'q> GridSearch<'q> {
    fn new(q: &'q RealizationQuery) -> Result<Self> {
        let g = &q.target;
        let n = g.len();
        if q.k == 0 {
            return Err(Error::InvalidSpec("grid bound must be positive".into()));
        }
        if n > q.vertex_cap {
            return Err(Error::CapExceeded(format!("{n} vertices, cap {}", q.vertex_cap)));
        }
        if q.k > q.grid_cap {
            return Err(Error::CapExceeded(format!("grid {}, cap {}", q.k, q.grid_cap)));
        }
        let mut row = vec![None; n];
        for (r, members) in q.same_row.iter().enumerate() {
            for &v in members {
                if v >= n || row[v].replace(r).is_some() {
                    return Err(Error::InvalidSpec(format!("bad row constraint on vertex {v}")));
                }
            }
        }
        let edge = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
        // greedy: most placed row-mates, then placed neighbours, then degree
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            let score = |v: usize| {
                let mates = row[v].map_or(0, |r| q.same_row[r].iter().filter(|&&u| placed[u]).count());
                let nb = g.neighbors(v).iter().filter(|&&u| placed[u]).count();
                (mates.min(1), nb, g.degree(v), std::cmp::Reverse(v))
            };
            let v = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| score(v)).expect("unplaced vertex");
            placed[v] = true;
            order.push(v);
        }
        Ok(GridSearch { q, n, order, edge, row })
    }

    fn admissible(&self, st: &State, depth: usize, v: usize, c: Cell) -> bool {
        let placed = &self.order[..depth];
        if placed.iter().any(|&u| st.pos[u] == Some(c)) {
            return false;
        }
        if let Some(r) = self.row[v] {
            if self.q.same_row[r].iter().any(|&u| st.pos[u].is_some_and(|p| p.1 != c.1)) {
                return false;
            }
        }
        for (i, &u) in placed.iter().enumerate() {
            let pu = st.pos[u].expect("placed");
            // a target edge through the new point is blocked for good
            for &w in &placed[i + 1..] {
                if self.edge[u][w] && on_open(pu, st.pos[w].expect("placed"), c) {
                    return false;
                }
            }
            let blocked = placed.iter().any(|&w| w != u && on_open(c, pu, st.pos[w].expect("placed")));
            if self.edge[v][u] {
                if blocked {
                    return false;
                }
            } else if !blocked && (depth + 1 == self.n || lattice_gcd(c, pu) < 2) {
                return false;
            }
        }
        true
    }

    fn accept(&self, cells: &[Cell]) -> bool {
        if self.q.symmetry_breaking {
            let minx = cells.iter().map(|c| c.0).min().unwrap_or(0);
            let miny = cells.iter().map(|c| c.1).min().unwrap_or(0);
            if minx != 0 || miny != 0 {
                return false;
            }
        }
        let ps = to_point_set(self.q.target.labels(), cells);
        visibility_graph(&ps).same_labeled(&self.q.target)
    }

    /// Returns `true` to stop.
    fn dfs(&self, st: &mut State, depth: usize) -> bool {
        if depth == self.n {
            let cells: Vec<Cell> = st.pos.iter().map(|p| p.expect("complete")).collect();
            if self.accept(&cells) {
                st.stats.realizations += 1;
                st.found.push(cells);
                return !self.q.enumerate_all;
            }
            st.stats.prunes += 1;
            return false;
        }
        let v = self.order[depth];
        let k = self.q.k as i64;
        for x in 0..k {
            for y in 0..k {
                if self.admissible(st, depth, v, (x, y)) {
                    st.stats.nodes += 1;
                    st.pos[v] = Some((x, y));
                    let stop = self.dfs(st, depth + 1);
                    st.pos[v] = None;
                    if stop {
                        return true;
                    }
                } else {
                    st.stats.prunes += 1;
                }
            }
        }
        false
    }

    fn first_cells(&self) -> Vec<Cell> {
        let k = self.q.k as i64;
        let xmax = if self.q.symmetry_breaking { (k - 1) / 2 } else { k - 1 };
        (0..=xmax).flat_map(|x| (0..k).map(move |y| (x, y))).collect()
    }

    fn run_from(&self, c: Cell) -> State {
        let mut st = State {
            pos: vec![None; self.n],
            stats: SearchStats::default(),
            found: Vec::new(),
        };
        st.stats.nodes += 1;
        st.pos[self.order[0]] = Some(c);
        self.dfs(&mut st, 1);
        st
    }
}

/// Exhaustive grid search. `FOUND` results have been re-verified exactly.
pub fn recognize_on_grid(q: &RealizationQuery) -> Result<SearchResult> {
    let s = GridSearch::new(q)?;
    let labels = q.target.labels();
    if s.n == 0 {
        let empty = to_point_set(labels, &[]);
        return Ok(SearchResult {
            status: SearchStatus::Found,
            realization: Some(empty.clone()),
            all: vec![empty],
            stats: SearchStats { realizations: 1, ..Default::default() },
        });
    }
    let cells = s.first_cells();
    let states: Vec<State> = if q.parallel && q.enumerate_all {
        cells.par_iter().map(|&c| s.run_from(c)).collect()
    } else if q.parallel {
        let first = cells.par_iter().find_map_first(|&c| {
            let st = s.run_from(c);
            (!st.found.is_empty()).then_some(st)
        });
        first.into_iter().collect()
    } else {
        let mut out = Vec::new();
        for &c in &cells {
            let st = s.run_from(c);
            let stop = !q.enumerate_all && !st.found.is_empty();
            out.push(st);
            if stop {
                break;
            }
        }
        out
    };
    let mut stats = SearchStats::default();
    let mut all = Vec::new();
    for st in states {
        stats.merge(&st.stats);
        all.extend(st.found.iter().map(|c| to_point_set(labels, c)));
    }
    if !q.enumerate_all {
        all.truncate(1);
    }
    for ps in &all {
        let r = check_realization(ps, &q.target, true)?;
        if !r.passed {
            return Err(Error::Witness(format!("grid search produced a bad realization: {r}")));
        }
    }
    Ok(SearchResult {
        status: if all.is_empty() { SearchStatus::Exhausted } else { SearchStatus::Found },
        realization: all.first().cloned(),
        all,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub passed: bool,
    /// Graph vertex `i` is realized by point `mapping[i]`.
    pub mapping: Option<Vec<usize>>,
    pub violation: Option<String>,
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass"),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

/// Whether `ps` realizes `g`: with `labeled`, vertex labels must match the
/// point labels; otherwise any isomorphism is accepted.
pub fn check_realization(ps: &PointSet, g: &VisibilityGraph, labeled: bool) -> Result<RealizationReport> {
    if ps.len() != g.len() {
        return Err(Error::SizeMismatch(format!("{} points for {} vertices", ps.len(), g.len())));
    }
    let h = visibility_graph(ps);
    if labeled {
        for l in g.labels() {
            ps.index_of(l)?;
        }
        let violation = h.first_difference(g)?.map(|(u, v, visible)| {
            let (iu, iv) = (ps.index_of(&u).expect("label"), ps.index_of(&v).expect("label"));
            if visible {
                format!("{u} and {v} see each other but are not adjacent: no point on the open segment")
            } else {
                let w = blocker(ps, iu, iv).map(|w| ps.label(w).to_string()).unwrap_or_default();
                format!("{u}-{v} is an edge but {w} blocks the segment")
            }
        });
        let mapping = violation
            .is_none()
            .then(|| g.labels().iter().map(|l| ps.index_of(l).expect("label")).collect());
        return Ok(RealizationReport { passed: violation.is_none(), mapping, violation });
    }
    let (dg, dh) = (degree_sequence(g), degree_sequence(&h));
    if dg != dh {
        return Ok(RealizationReport {
            passed: false,
            mapping: None,
            violation: Some(format!("degree sequences differ: graph {dg:?}, points {dh:?}")),
        });
    }
    Ok(match isomorphism(g, &h) {
        Some(m) => RealizationReport { passed: true, mapping: Some(m), violation: None },
        None => RealizationReport {
            passed: false,
            mapping: None,
            violation: Some("the visibility graph of the points is not isomorphic to the graph".into()),
        },
    })
}

fn degree_sequence(g: &VisibilityGraph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.len()).map(|v| g.degree(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Colour refinement on the disjoint union, so colours are comparable.
fn refine(g: &VisibilityGraph, h: &VisibilityGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.len();
    let mut cg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut sig = |graph: &VisibilityGraph, col: &[usize]| -> Vec<usize> {
            (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = graph.neighbors(v).iter().map(|&u| col[u]).collect();
                    nb.sort_unstable();
                    let next = ids.len();
                    *ids.entry((col[v], nb)).or_insert(next)
                })
                .collect()
        };
        let ng = sig(g, &cg);
        let nh = sig(h, &ch);
        let classes = |c: &[usize]| {
            let mut s = c.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        let stable = classes(&ng) == classes(&cg);
        (cg, ch) = (ng, nh);
        if stable {
            return (cg, ch);
        }
    }
}

/// An isomorphism `g -> h` as a vertex map, if one exists.
pub fn isomorphism(g: &VisibilityGraph, h: &VisibilityGraph) -> Option<Vec<usize>> {
    let n = g.len();
    if n != h.len() {
        return None;
    }
    let (cg, ch) = refine(g, h);
    let mut count_g: HashMap<usize, usize> = HashMap::new();
    let mut count_h: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        *count_g.entry(cg[v]).or_default() += 1;
        *count_h.entry(ch[v]).or_default() += 1;
    }
    if count_g != count_h {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (count_g[&cg[v]], std::cmp::Reverse(g.degree(v)), v));
    fn go(
        i: usize,
        order: &[usize],
        g: &VisibilityGraph,
        h: &VisibilityGraph,
        cg: &[usize],
        ch: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for w in 0..h.len() {
            if used[w] || ch[w] != cg[v] {
                continue;
            }
            let ok = order[..i].iter().all(|&u| {
                let mu = map[u].expect("mapped");
                g.has_edge(u, v) == h.has_edge(mu, w)
            });
            if !ok {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            if go(i + 1, order, g, h, cg, ch, map, used) {
                return true;
            }
            map[v] = None;
            used[w] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    go(0, &order, g, h, &cg, &ch, &mut map, &mut used).then(|| map.into_iter().map(|m| m.expect("mapped")).collect())
}

/// Grid placements of `points` points with every listed line collinear and
/// no forbidden triple collinear.
#[derive(Clone, Debug)]
pub struct IncidencePattern {
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
    pub forbidden: Vec<[usize; 3]>,
}

impl IncidencePattern {
    /// Forbids every triple that is not inside one of the lines.
    pub fn exact(points: usize, lines: Vec<Vec<usize>>) -> Self {
        let mut forbidden = Vec::new();
        for a in 0..points {
            for b in a + 1..points {
                for c in b + 1..points {
                    if !lines.iter().any(|l| l.contains(&a) && l.contains(&b) && l.contains(&c)) {
                        forbidden.push([a, b, c]);
                    }
                }
            }
        }
        IncidencePattern { points, lines, forbidden }
    }

    /// First violated requirement of a full placement.
    pub fn violation(&self, cells: &[Cell]) -> Option<String> {
        for (i, a) in cells.iter().enumerate() {
            if let Some(j) = cells[i + 1..].iter().position(|b| b == a) {
                return Some(format!("points {i} and {} coincide", i + 1 + j));
            }
        }
        for (li, l) in self.lines.iter().enumerate() {
            if let Some(&p) = l[2..].iter().find(|&&p| cross(cells[l[0]], cells[l[1]], cells[p]) != 0) {
                return Some(format!("point {p} is off line {li}"));
            }
        }
        self.forbidden
            .iter()
            .find(|t| cross(cells[t[0]], cells[t[1]], cells[t[2]]) == 0)
            .map(|t| format!("points {}, {}, {} are collinear", t[0], t[1], t[2]))
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceResult {
    pub status: SearchStatus,
    pub placement: Option<Vec<Cell>>,
    pub stats: SearchStats,
}

pub const DEFAULT_PATTERN_CAP: usize = 16;

struct PatternSearch<'a> {
    pat: &'a IncidencePattern,
    k: i64,
    order: Vec<usize>,
    lines_of: Vec<Vec<usize>>,
    triples_of: Vec<Vec<[usize; 3]>>,
}

impl PatternSearch<'_> {
    /// Two placed points of line `li`, if it already has two.
    fn determined(&self, pos: &[Option<Cell>], li: usize) -> Option<(Cell, Cell)> {
        let mut it = self.pat.lines[li].iter().filter_map(|&u| pos[u]);
        Some((it.next()?, it.next()?))
    }

    fn ok(&self, pos: &[Option<Cell>], v: usize, c: Cell) -> bool {
        if pos.contains(&Some(c)) {
            return false;
        }
        for &li in &self.lines_of[v] {
            if let Some((a, b)) = self.determined(pos, li) {
                if cross(a, b, c) != 0 {
                    return false;
                }
            }
        }
        self.triples_of[v].iter().all(|t| {
            let mut q = [c; 3];
            for (slot, &u) in q.iter_mut().zip(t) {
                if u != v {
                    match pos[u] {
                        Some(p) => *slot = p,
                        None => return true,
                    }
                }
            }
            cross(q[0], q[1], q[2]) != 0
        })
    }

    fn candidates(&self, pos: &[Option<Cell>], depth: usize, v: usize) -> Vec<Cell> {
        let k = self.k;
        if depth == 0 {
            // one representative per orbit of the square's symmetries
            let h = (k - 1) / 2;
            return (0..=h).flat_map(|y| (0..=y).map(move |x| (x, y))).collect();
        }
        if let Some((a, b)) = self.lines_of[v].iter().find_map(|&li| self.determined(pos, li)) {
            let g = lattice_gcd(a, b);
            let (dx, dy) = ((b.0 - a.0) / g, (b.1 - a.1) / g);
            let inside = |c: Cell| (0..k).contains(&c.0) && (0..k).contains(&c.1);
            let mut start = a;
            while inside((start.0 - dx, start.1 - dy)) {
                start = (start.0 - dx, start.1 - dy);
            }
            let mut out = Vec::new();
            let mut c = start;
            while inside(c) {
                out.push(c);
                c = (c.0 + dx, c.1 + dy);
            }
            return out;
        }
        (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect()
    }

    fn dfs(&self, pos: &mut Vec<Option<Cell>>, depth: usize, stats: &mut SearchStats) -> bool {
        if depth == self.order.len() {
            stats.realizations += 1;
            return true;
        }
        let v = self.order[depth];
        for c in self.candidates(pos, depth, v) {
            if !self.ok(pos, v, c) {
                stats.prunes += 1;
                continue;
            }
            stats.nodes += 1;
            pos[v] = Some(c);
            if self.dfs(pos, depth + 1, stats) {
                return true;
            }
            pos[v] = None;
        }
        false
    }
}

/// Exhaustive search of the `k x k` grid; `FOUND` placements are re-checked.
pub fn search_incidence_pattern(pat: &IncidencePattern, k: usize) -> Result<IncidenceResult> {
    if pat.points > DEFAULT_PATTERN_CAP {
        return Err(Error::CapExceeded(format!("{} points, cap {DEFAULT_PATTERN_CAP}", pat.points)));
    }
    if k == 0 || k > DEFAULT_GRID_CAP {
        return Err(Error::CapExceeded(format!("grid {k}, allowed 1..={DEFAULT_GRID_CAP}")));
    }
    let n = pat.points;
    let mut lines_of = vec![Vec::new(); n];
    for (li, l) in pat.lines.iter().enumerate() {
        if l.len() < 2 || l.iter().any(|&p| p >= n) {
            return Err(Error::InvalidSpec(format!("bad line {li}: {l:?}")));
        }
        for &p in l {
            lines_of[p].push(li);
        }
    }
    let mut triples_of = vec![Vec::new(); n];
    for t in &pat.forbidden {
        if t.iter().any(|&p| p >= n) {
            return Err(Error::InvalidSpec(format!("bad triple {t:?}")));
        }
        for &p in t {
            triples_of[p].push(*t);
        }
    }
    // greedy: most lines already fixed by two placed points, then most lines touched
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let score = |p: usize| {
            let placed_on = |li: &usize| pat.lines[*li].iter().filter(|&&u| placed[u]).count();
            let fixed = lines_of[p].iter().filter(|li| placed_on(li) >= 2).count();
            let touched = lines_of[p].iter().filter(|li| placed_on(li) >= 1).count();
            (fixed, touched, lines_of[p].len(), std::cmp::Reverse(p))
        };
        let p = (0..n).filter(|&p| !placed[p]).max_by_key(|&p| score(p)).expect("unplaced point");
        placed[p] = true;
        order.push(p);
    }
    let s = PatternSearch { pat, k: k as i64, order, lines_of, triples_of };
    let mut pos = vec![None; n];
    let mut stats = SearchStats::default();
    let found = s.dfs(&mut pos, 0, &mut stats);
    let placement = found.then(|| pos.into_iter().map(|p| p.expect("placed")).collect::<Vec<Cell>>());
    if let Some(cells) = &placement {
        if let Some(v) = pat.violation(cells) {
            return Err(Error::Witness(format!("pattern search produced a bad placement: {v}")));
        }
    }
    Ok(IncidenceResult {
        status: if found { SearchStatus::Found } else { SearchStatus::Exhausted },
        placement,
        stats,
    })
}

/// Checks that a grid realization with horizontal rows is, after a
/// projective map keeping rows horizontal, a grid with equally spaced rows
/// and parallel, equally spaced columns. Point `r * cols + c` is row `r`,
/// column `c`. Returns the first defect.
pub fn grid_spacing_defect(cells: &[Cell], rows: usize, cols: usize) -> Option<String> {
    assert_eq!(cells.len(), rows * cols, "cell count");
    let at = |r: usize, c: usize| cells[r * cols + c];
    for r in 0..rows {
        if (0..cols).any(|c| at(r, c).1 != at(r, 0).1) {
            return Some(format!("row {r} is not horizontal"));
        }
    }
    for c in 0..cols {
        if let Some(r) = (2..rows).find(|&r| cross(at(0, c), at(1, c), at(r, c)) != 0) {
            return Some(format!("column {c} is bent at row {r}"));
        }
    }
    let q = |v: i64| Rational::from_integer(BigInt::from(v));
    // column c as x = m_c * y + t_c
    let line = |c: usize| {
        let ((x0, y0), (x1, y1)) = (at(0, c), at(1, c));
        let m = Rational::new(BigInt::from(x1 - x0), BigInt::from(y1 - y0));
        let t = q(x0) - &m * q(y0);
        (m, t)
    };
    let lines: Vec<(Rational, Rational)> = (0..cols).map(line).collect();
    let (xs, ys): (Vec<Vec<Rational>>, Vec<Rational>) = if lines.iter().all(|l| l.0 == lines[0].0) {
        let m = &lines[0].0;
        (
            (0..rows).map(|r| (0..cols).map(|c| q(at(r, c).0) - m * q(at(r, c).1)).collect()).collect(),
            (0..rows).map(|r| q(at(r, 0).1)).collect(),
        )
    } else {
        let (m0, t0) = &lines[0];
        let Some((m1, t1)) = lines.iter().find(|l| l.0 != *m0) else { unreachable!() };
        let vy = (t1 - t0) / (m0 - m1);
        let vx = m0 * &vy + t0;
        if let Some(c) = lines.iter().position(|(m, t)| m * &vy + t != vx) {
            return Some(format!("column {c} misses the common point of the columns"));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for r in 0..rows {
            let dy = q(at(r, 0).1) - &vy;
            let inv = Rational::from_integer(1.into()) / &dy;
            xs.push((0..cols).map(|c| (q(at(r, c).0) - &vx) * &inv).collect());
            ys.push(inv);
        }
        (xs, ys)
    };
    for r in 0..rows {
        for c in 2..cols {
            if &xs[r][c] - &xs[r][c - 1] != &xs[r][1] - &xs[r][0] {
                return Some(format!("columns are unequally spaced in row {r}"));
            }
        }
    }
    (2..rows)
        .find(|&r| &ys[r] - &ys[r - 1] != &ys[1] - &ys[0])
        .map(|r| format!("rows {} and {r} are unequally spaced", r - 1))
}

/// Graph of the `rows x cols` integer grid, vertex `r * cols + c` labeled
/// `r{r}c{c}`.
pub fn grid_graph(rows: usize, cols: usize) -> (PointSet, VisibilityGraph) {
    let labels: Vec<String> = (0..rows).flat_map(|r| (0..cols).map(move |c| format!("r{r}c{c}"))).collect();
    let pts = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| ProjPoint::int(c as i64, r as i64)))
        .collect();
    let ps = PointSet::new(labels, pts).expect("distinct grid points");
    let g = visibility_graph(&ps);
    (ps, g)
}
