//! Maximal Dyck paths and compatible pairs.
//!
//! Edges are numbered as on the page: horizontal edges `u_1..u_{a1}` from left
//! to right and vertical edges `v_1..v_{a2}` from bottom to top. Lattice points
//! along the path are indexed by position `0..=a1+a2`; positions are taken
//! modulo `a1+a2` whenever a subpath wraps past `(a1,a2) ≡ (0,0)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::cheb;

/// Default hard cap on the number of enumerated pairs or families.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// The enumeration cap: `CLUSTER_ENUM_CAP` from the environment, else [`DEFAULT_ENUM_CAP`].
pub fn enum_cap() -> u64 {
    std::env::var("CLUSTER_ENUM_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    H(usize),
    V(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    a1: usize,
    a2: usize,
    heights: Vec<usize>,
    /// `edges[k-1]` joins `points[k-1]` to `points[k]`.
    edges: Vec<Edge>,
    points: Vec<(usize, usize)>,
    hpos: Vec<usize>,
    vpos: Vec<usize>,
}

/// The maximal Dyck path `D^{a1×a2}`. Negative sizes (as in `D^{c_1×c_0}`) give the empty path.
pub fn max_dyck(a1: i64, a2: i64) -> Result<DyckPath> {
    if a1 <= 0 && a2 <= 0 {
        return Ok(DyckPath::build(0, 0));
    }
    if a1 < 0 || a2 < 0 {
        return Err(Error::InvalidArgument(format!("Dyck path size {a1}x{a2}")));
    }
    Ok(DyckPath::build(a1 as usize, a2 as usize))
}

impl DyckPath {
    fn build(a1: usize, a2: usize) -> Self {
        let heights: Vec<usize> = if a1 == 0 {
            vec![0]
        } else {
            (0..=a1).map(|x| (a2 as u128 * x as u128 / a1 as u128) as usize).collect()
        };
        let mut edges = Vec::with_capacity(a1 + a2);
        let mut points = Vec::with_capacity(a1 + a2 + 1);
        let (mut hpos, mut vpos) = (vec![0; a1 + 1], vec![0; a2 + 1]);
        let (mut x, mut y) = (0usize, 0usize);
        points.push((0, 0));
        let mut climb = |x: usize, y: &mut usize, target: usize, edges: &mut Vec<Edge>, points: &mut Vec<(usize, usize)>| {
            while *y < target {
                *y += 1;
                edges.push(Edge::V(*y));
                vpos[*y] = edges.len();
                points.push((x, *y));
            }
        };
        if a1 == 0 {
            climb(0, &mut y, a2, &mut edges, &mut points);
        }
        while x < a1 {
            x += 1;
            edges.push(Edge::H(x));
            hpos[x] = edges.len();
            points.push((x, y));
            climb(x, &mut y, heights[x], &mut edges, &mut points);
        }
        DyckPath { a1, a2, heights, edges, points, hpos, vpos }
    }

    pub fn a1(&self) -> usize {
        self.a1
    }

    pub fn a2(&self) -> usize {
        self.a2
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Total number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    /// x-coordinates of the vertical edges `v_1..v_{a2}`.
    pub fn verticals(&self) -> Vec<usize> {
        (1..=self.a2).map(|j| self.points[self.vpos[j]].0).collect()
    }

    /// Position along the path of a lattice point (the origin is position 0).
    pub fn position(&self, p: (usize, usize)) -> Result<usize> {
        if p == (self.a1, self.a2) {
            return Ok(0);
        }
        self.points
            .iter()
            .position(|&q| q == p)
            .ok_or_else(|| Error::InvalidArgument(format!("point {p:?} is not on the path")))
    }

    fn edge_at(&self, k: usize) -> Edge {
        self.edges[(k - 1) % self.edges.len()]
    }

    /// Edges of the subpath from `a` to `b`, in path order. `a == b` gives the full loop.
    pub fn subpath_edges(&self, a: (usize, usize), b: (usize, usize)) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.edges.len();
        let pa = self.position(a)?;
        let pb = self.position(b)?;
        let (mut hs, mut vs) = (Vec::new(), Vec::new());
        if n == 0 {
            return Ok((hs, vs));
        }
        let len = match (pb + n - pa) % n {
            0 => n,
            l => l,
        };
        for k in pa + 1..=pa + len {
            match self.edge_at(k) {
                Edge::H(i) => hs.push(i),
                Edge::V(j) => vs.push(j),
            }
        }
        Ok((hs, vs))
    }

    /// Maximality: every lattice point strictly above the path is strictly above the diagonal.
    pub fn is_maximal(&self) -> bool {
        if self.a1 == 0 {
            return true;
        }
        (0..=self.a1).all(|x| {
            (self.heights[x] + 1..=self.a2)
                .all(|y| (self.a2 as i128) * (x as i128) - (self.a1 as i128) * (y as i128) < 0)
        })
    }

    pub fn to_json(&self) -> DyckJson {
        DyckJson { a1: self.a1, a2: self.a2, verticals: self.verticals() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckJson {
    pub a1: usize,
    pub a2: usize,
    pub verticals: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CompatiblePair {
    #[serde(rename = "S1")]
    pub s1: Vec<usize>,
    #[serde(rename = "S2")]
    pub s2: Vec<usize>,
}

impl CompatiblePair {
    pub fn new(mut s1: Vec<usize>, mut s2: Vec<usize>) -> Self {
        s1.sort_unstable();
        s1.dedup();
        s2.sort_unstable();
        s2.dedup();
        CompatiblePair { s1, s2 }
    }
}

/// Per-S2 data for the compatibility test of a pair `(u, v)`.
struct PairGeom {
    /// doubled-path position of `E` (start of `u`)
    start: usize,
    /// number of edges on `EF`
    len: usize,
}

struct Checker<'a> {
    path: &'a DyckPath,
    r: usize,
    /// prefix counts over the doubled path: horizontals, verticals, verticals in S2
    ph: Vec<usize>,
    pv: Vec<usize>,
    ps2: Vec<usize>,
}

impl<'a> Checker<'a> {
    fn new(path: &'a DyckPath, r: usize, s2: &[bool]) -> Self {
        let n = path.len();
        let (mut ph, mut pv, mut ps2) = (vec![0; 2 * n + 1], vec![0; 2 * n + 1], vec![0; 2 * n + 1]);
        for k in 1..=2 * n {
            let (h, v, s) = match path.edge_at(k) {
                Edge::H(_) => (1, 0, 0),
                Edge::V(j) => (0, 1, s2[j] as usize),
            };
            ph[k] = ph[k - 1] + h;
            pv[k] = pv[k - 1] + v;
            ps2[k] = ps2[k - 1] + s;
        }
        Checker { path, r, ph, pv, ps2 }
    }

    fn geom(&self, u: usize, v: usize) -> PairGeom {
        let n = self.path.len();
        let start = self.path.hpos[u] - 1;
        let end = self.path.vpos[v] % n;
        let len = match (end + n - start) % n {
            0 => n,
            l => l,
        };
        PairGeom { start, len }
    }

    /// Witness via the first alternative, independent of S1.
    fn free(&self, g: &PairGeom) -> bool {
        let f = g.start + g.len;
        (1..g.len).any(|j| {
            let a = g.start + j;
            self.ph[f] - self.ph[a] == self.r * (self.ps2[f] - self.ps2[a])
        })
    }

    /// Witness via the second alternative for a given S1 membership.
    fn second(&self, g: &PairGeom, s1: &[bool]) -> bool {
        let mut h_in = 0usize;
        for j in 1..g.len {
            let a = g.start + j;
            if let Edge::H(i) = self.path.edge_at(a) {
                h_in += s1[i] as usize;
            }
            if self.pv[a] - self.pv[g.start] == self.r * h_in {
                return true;
            }
        }
        false
    }

    /// Largest horizontal index whose membership the pair's test reads.
    fn determination(&self, g: &PairGeom) -> usize {
        (g.start + 1..g.start + g.len)
            .filter_map(|k| match self.path.edge_at(k) {
                Edge::H(i) => Some(i),
                Edge::V(_) => None,
            })
            .max()
            .unwrap_or(0)
    }
}

fn membership(len: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; len + 1];
    for &i in set {
        m[i] = true;
    }
    m
}

/// Compatibility of `(S1, S2)` on `path` for arrow multiplicity `r`.
///
/// An empty `EF°` makes the existential false; it cannot occur for a horizontal
/// `u` and vertical `v` on a path with at least two edges.
pub fn is_compatible(path: &DyckPath, r: usize, s1: &[usize], s2: &[usize]) -> Result<bool> {
    check_indices(path, s1, s2)?;
    if s1.is_empty() || s2.is_empty() {
        return Ok(true);
    }
    let m1 = membership(path.a1, s1);
    let m2 = membership(path.a2, s2);
    let ck = Checker::new(path, r, &m2);
    for &u in s1 {
        for &v in s2 {
            let g = ck.geom(u, v);
            if !(ck.free(&g) || ck.second(&g, &m1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_indices(path: &DyckPath, s1: &[usize], s2: &[usize]) -> Result<()> {
    if s1.iter().any(|&i| i == 0 || i > path.a1) || s2.iter().any(|&j| j == 0 || j > path.a2) {
        return Err(Error::InvalidArgument("edge index out of range".into()));
    }
    Ok(())
}

/// Visits every compatible pair in order (S2 lex, then S1 lex). Returns the count.
pub fn for_each_compatible<F>(path: &DyckPath, r: usize, cap: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[usize], &[usize]),
{
    let mut count = 0u64;
    let mut s2: Vec<usize> = Vec::new();
    let mut err = None;
    lex_subsets(path.a2, &mut s2, &mut |s2| {
        if err.is_some() {
            return;
        }
        if let Err(e) = s1_for_s2(path, r, s2, cap, &mut count, &mut visit) {
            err = Some(e);
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

fn lex_subsets(n: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    f(cur);
    let start = cur.last().map_or(1, |l| l + 1);
    for j in start..=n {
        cur.push(j);
        lex_subsets(n, cur, f);
        cur.pop();
    }
}

struct S1Search<'a, 'b> {
    ck: Checker<'a>,
    /// per horizontal u: (determination index, geometry) of pairs without a free witness
    constraints: Vec<Vec<(usize, PairGeom)>>,
    s2: &'b [usize],
    a1: usize,
}

fn s1_for_s2<F>(path: &DyckPath, r: usize, s2: &[usize], cap: u64, count: &mut u64, visit: &mut F) -> Result<()>
where
    F: FnMut(&[usize], &[usize]),
{
    let m2 = membership(path.a2, s2);
    let ck = Checker::new(path, r, &m2);
    let mut constraints = Vec::with_capacity(path.a1 + 1);
    constraints.push(Vec::new());
    for u in 1..=path.a1 {
        let mut list = Vec::new();
        for &v in s2 {
            let g = ck.geom(u, v);
            if !ck.free(&g) {
                list.push((ck.determination(&g), g));
            }
        }
        constraints.push(list);
    }
    let search = S1Search { ck, constraints, s2, a1: path.a1 };
    let mut s1 = Vec::new();
    let mut m1 = vec![false; path.a1 + 1];
    search.dfs(&mut s1, &mut m1, cap, count, visit)
}

impl S1Search<'_, '_> {
    fn dfs<F>(&self, s1: &mut Vec<usize>, m1: &mut [bool], cap: u64, count: &mut u64, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[usize], &[usize]),
    {
        let last = s1.last().copied().unwrap_or(0);
        let pending_ok = s1.iter().all(|&u| {
            self.constraints[u].iter().all(|(d, g)| *d <= last || self.ck.second(g, m1))
        });
        if pending_ok {
            *count += 1;
            if *count > cap {
                return Err(Error::EnumerationCap { cap });
            }
            visit(s1, self.s2);
        }
        for j in last + 1..=self.a1 {
            s1.push(j);
            m1[j] = true;
            let ok = s1.iter().all(|&u| {
                self.constraints[u]
                    .iter()
                    .all(|(d, g)| *d <= last || *d > j || self.ck.second(g, m1))
            });
            if ok {
                self.dfs(s1, m1, cap, count, visit)?;
            }
            m1[j] = false;
            s1.pop();
        }
        Ok(())
    }
}

/// All compatible pairs in deterministic order (S2 lex, then S1 lex).
pub fn enumerate_compatible(path: &DyckPath, r: usize, cap: u64) -> Result<Vec<CompatiblePair>> {
    let mut out = Vec::new();
    for_each_compatible(path, r, cap, |s1, s2| out.push(CompatiblePair { s1: s1.to_vec(), s2: s2.to_vec() }))?;
    Ok(out)
}

/// Number of compatible pairs keyed by `(|S1|, |S2|)`.
pub type PairCounts = BTreeMap<(usize, usize), u64>;

fn counts_cache() -> &'static Mutex<HashMap<(usize, usize, usize), Arc<PairCounts>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), Arc<PairCounts>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Compatible-pair counts by size; memoized per `(a1, a2, r)`.
pub fn pair_counts(path: &DyckPath, r: usize, cap: u64) -> Result<Arc<PairCounts>> {
    let key = (path.a1, path.a2, r);
    if let Some(c) = counts_cache().lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let mut counts = PairCounts::new();
    for_each_compatible(path, r, cap, |s1, s2| *counts.entry((s1.len(), s2.len())).or_default() += 1)?;
    let counts = Arc::new(counts);
    counts_cache().lock().expect("cache lock").insert(key, counts.clone());
    Ok(counts)
}

/// `D^{c_{n-1} × c_{n-2}}` for arrow multiplicity `r`.
pub fn cheb_path(r: i64, n: i64) -> Result<DyckPath> {
    max_dyck(cheb(r, n - 1)?, cheb(r, n - 2)?)
}

/// The paths of a family for `x_{n+1}^p x_n^q`: `q` copies of
/// `D^{c_{n-1}×c_{n-2}}` followed by `p` copies of `D^{c_n×c_{n-1}}`.
pub fn family_paths(r: i64, n: i64, p: usize, q: usize) -> Result<Vec<DyckPath>> {
    let small = cheb_path(r, n)?;
    let big = cheb_path(r, n + 1)?;
    let mut out = vec![small; q];
    out.extend(std::iter::repeat_n(big, p));
    Ok(out)
}

/// Visits every family (one compatible pair per path, q-then-p order,
/// lexicographic in the per-path enumeration order). Returns the count.
pub fn for_each_family<F>(r: i64, n: i64, p: usize, q: usize, cap: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[CompatiblePair]),
{
    if n < 3 {
        return Err(Error::InvalidArgument(format!("families need n >= 3, got {n}")));
    }
    let paths = family_paths(r, n, p, q)?;
    let ru = r as usize;
    let mut lists: Vec<Vec<CompatiblePair>> = Vec::with_capacity(paths.len());
    let mut total: u128 = 1;
    for path in &paths {
        let l = enumerate_compatible(path, ru, cap)?;
        total = total.saturating_mul(l.len() as u128);
        lists.push(l);
    }
    if total > cap as u128 {
        return Err(Error::EnumerationCap { cap });
    }
    let mut idx = vec![0usize; lists.len()];
    let mut fam: Vec<CompatiblePair> = lists.iter().map(|l| l[0].clone()).collect();
    let mut count = 0u64;
    loop {
        visit(&fam);
        count += 1;
        let mut k = lists.len();
        loop {
            if k == 0 {
                return Ok(count);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                fam[k] = lists[k][idx[k]].clone();
                break;
            }
            idx[k] = 0;
            fam[k] = lists[k][0].clone();
        }
    }
}

pub fn enumerate_families(r: i64, n: i64, p: usize, q: usize, cap: u64) -> Result<Vec<Vec<CompatiblePair>>> {
    let mut out = Vec::new();
    for_each_family(r, n, p, q, cap, |f| out.push(f.to_vec()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The compatibility definition evaluated literally through `subpath_edges`.
    fn brute_compatible(path: &DyckPath, r: usize, s1: &[usize], s2: &[usize]) -> bool {
        let pts = path.points();
        let n = path.len();
        for &u in s1 {
            for &v in s2 {
                let pe = path.hpos[u] - 1;
                let pf = path.vpos[v] % n;
                let e = pts[pe];
                let f = pts[pf];
                let len = match (pf + n - pe) % n {
                    0 => n,
                    l => l,
                };
                let witness = (1..len).any(|j| {
                    let a = pts[(pe + j) % n];
                    let (af1, af2) = path.subpath_edges(a, f).unwrap();
                    let (ea1, ea2) = path.subpath_edges(e, a).unwrap();
                    let c1 = af1.len() == r * af2.iter().filter(|j| s2.contains(j)).count();
                    let c2 = ea2.len() == r * ea1.iter().filter(|i| s1.contains(i)).count();
                    c1 || c2
                });
                if !witness {
                    return false;
                }
            }
        }
        true
    }

    fn subsets(n: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn figure_paths() {
        assert_eq!(max_dyck(6, 4).unwrap().verticals(), vec![2, 3, 5, 6]);
        assert_eq!(max_dyck(8, 3).unwrap().verticals(), vec![3, 6, 8]);
        let p = max_dyck(1, 0).unwrap();
        assert_eq!(p.edges(), &[Edge::H(1)]);
        assert!(max_dyck(0, -1).unwrap().is_empty());
    }

    #[test]
    fn subpaths_of_6x4() {
        let p = max_dyck(6, 4).unwrap();
        assert_eq!(p.subpath_edges((2, 1), (3, 2)).unwrap(), (vec![3], vec![2]));
        assert_eq!(p.subpath_edges((3, 2), (2, 1)).unwrap(), (vec![4, 5, 6, 1, 2], vec![3, 4, 1]));
        let (h, v) = p.subpath_edges((2, 1), (2, 1)).unwrap();
        assert_eq!(h.len() + v.len(), 10);
        assert!(p.subpath_edges((1, 1), (2, 1)).is_err());
    }

    #[test]
    fn maximality() {
        for a1 in 1..15 {
            for a2 in 0..=a1 {
                assert!(max_dyck(a1 as i64, a2 as i64).unwrap().is_maximal());
            }
        }
    }

    #[test]
    fn small_enumerations() {
        let p = max_dyck(1, 0).unwrap();
        let pairs = enumerate_compatible(&p, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(pairs, vec![CompatiblePair::new(vec![], vec![]), CompatiblePair::new(vec![1], vec![])]);
        let p = max_dyck(8, 3).unwrap();
        let pairs = enumerate_compatible(&p, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(pairs.len(), 365);
        assert_eq!(pairs.iter().filter(|c| c.s2.is_empty()).count(), 256);
        for c in pairs.iter().filter(|c| c.s2 == vec![1]) {
            assert!(c.s1.iter().all(|&u| u >= 4));
        }
        assert_eq!(pairs.iter().filter(|c| c.s2 == vec![1]).count(), 32);
        let mut sorted = pairs.clone();
        sorted.sort_by(|a, b| (&a.s2, &a.s1).cmp(&(&b.s2, &b.s1)));
        assert_eq!(sorted, pairs);
    }

    #[test]
    fn enumeration_matches_definition_exhaustively() {
        for (a1, a2, r) in [(3, 1, 2), (4, 3, 2), (5, 4, 2), (3, 1, 3), (8, 3, 3), (6, 4, 2)] {
            let path = max_dyck(a1, a2).unwrap();
            let mut expected = Vec::new();
            for s2 in subsets(a2 as usize) {
                for s1 in subsets(a1 as usize) {
                    if brute_compatible(&path, r, &s1, &s2) {
                        expected.push(CompatiblePair::new(s1.clone(), s2.clone()));
                    }
                }
            }
            expected.sort_by(|a, b| (&a.s2, &a.s1).cmp(&(&b.s2, &b.s1)));
            assert_eq!(enumerate_compatible(&path, r, DEFAULT_ENUM_CAP).unwrap(), expected, "{a1}x{a2} r={r}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = max_dyck(8, 3).unwrap();
        assert_eq!(enumerate_compatible(&p, 3, 100), Err(Error::EnumerationCap { cap: 100 }));
    }

    #[test]
    fn families() {
        let single = enumerate_families(3, 4, 1, 0, DEFAULT_ENUM_CAP).unwrap();
        let direct = enumerate_compatible(&cheb_path(3, 5).unwrap(), 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(single, direct.into_iter().map(|c| vec![c]).collect::<Vec<_>>());
        let a = enumerate_compatible(&cheb_path(2, 3).unwrap(), 2, DEFAULT_ENUM_CAP).unwrap().len();
        let b = enumerate_compatible(&cheb_path(2, 4).unwrap(), 2, DEFAULT_ENUM_CAP).unwrap().len();
        assert_eq!(enumerate_families(2, 3, 1, 1, DEFAULT_ENUM_CAP).unwrap().len(), a * b);
    }

    proptest! {
        #[test]
        fn singletons_are_compatible(a1 in 1i64..12, frac in 0.0f64..1.0, r in 2usize..5) {
            let a2 = ((a1 as f64) * frac) as i64;
            let p = max_dyck(a1, a2).unwrap();
            for u in 1..=a1 as usize {
                prop_assert!(is_compatible(&p, r, &[u], &[]).unwrap());
            }
            for v in 1..=a2 as usize {
                prop_assert!(is_compatible(&p, r, &[], &[v]).unwrap());
            }
            for u in 1..=a1 as usize {
                for v in 1..=a2 as usize {
                    prop_assert_eq!(is_compatible(&p, r, &[u], &[v]).unwrap(), brute_compatible(&p, r, &[u], &[v]));
                }
            }
        }

        #[test]
        fn predicate_matches_definition(a1 in 2i64..9, frac in 0.0f64..1.0, r in 2usize..4, m1 in any::<u16>(), m2 in any::<u16>()) {
            let a2 = ((a1 as f64) * frac) as i64;
            let p = max_dyck(a1, a2).unwrap();
            let s1: Vec<usize> = (1..=a1 as usize).filter(|i| m1 >> (i - 1) & 1 == 1).collect();
            let s2: Vec<usize> = (1..=a2 as usize).filter(|i| m2 >> (i - 1) & 1 == 1).collect();
            prop_assert_eq!(is_compatible(&p, r, &s1, &s2).unwrap(), brute_compatible(&p, r, &s1, &s2));
        }
    }
}
