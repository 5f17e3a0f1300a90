//! Positivity in rank 3, checked two ways.
//!
//! The structural pipeline cuts a mutation sequence into two-vertex blocks,
//! expands a cluster monomial node by node with the hybrid formula, groups each
//! node's expansion into the three monomial families and checks the `P_θ`
//! buckets. The oracle sweep simply mutates and looks at coefficients.
//!
//! At a node with vertices `(d, e, f)` expansions live in the context
//! `[x1, x2, x3, x{d}', x{e}'']`, where `x{d}'` is the variable obtained by
//! mutating at `d` and `x{e}''` the one obtained by mutating at `d` then `e`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{hybrid_expand, Rank3Params};
use crate::laurent::{vars, LaurentPolynomial, Vars};
use crate::mutation::{is_mutation_acyclic_rank3, Budget, ExchangeMatrix, Seed};

const FLAT: [&str; 3] = ["x1", "x2", "x3"];

fn third(a: usize, b: usize) -> usize {
    6 - a - b
}

/// A node `t_j`: `pos` mutations after `t_0`, with its vertices `d`, `e`, `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub pos: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
}

/// Breakpoints of a mutation sequence. The last node is the end of the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSegmentation {
    pub seq: Vec<usize>,
    pub nodes: Vec<Node>,
}

impl SeedSegmentation {
    pub fn breakpoints(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.pos).collect()
    }

    /// The vertex pair `(e_{j,1}, e_{j,2})` of each block.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.nodes[..self.nodes.len() - 1].iter().map(|n| (n.d, n.e)).collect()
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.seq[self.nodes[j].pos..self.nodes[j + 1].pos]
    }

    pub fn last(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Cuts `seq` at every first vertex outside the current pair.
pub fn segment_sequence(seq: &[usize]) -> Result<SeedSegmentation> {
    for (i, &v) in seq.iter().enumerate() {
        if !(1..=3).contains(&v) {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range 1..=3")));
        }
        if i > 0 && seq[i - 1] == v {
            return Err(Error::InvalidArgument(format!("vertex {v} repeated at positions {i} and {}", i + 1)));
        }
    }
    if seq.is_empty() {
        let nodes = vec![Node { pos: 0, d: 1, e: 2, f: 3 }];
        return Ok(SeedSegmentation { seq: Vec::new(), nodes });
    }
    let d0 = seq[0];
    let e0 = seq.get(1).copied().unwrap_or(if d0 == 1 { 2 } else { 1 });
    let mut nodes = vec![Node { pos: 0, d: d0, e: e0, f: third(d0, e0) }];
    let (mut a, mut b) = (d0, e0);
    for i in 2..seq.len() {
        let v = seq[i];
        if v != a && v != b {
            let d = seq[i - 1];
            nodes.push(Node { pos: i, d, e: v, f: third(d, v) });
            a = d;
            b = v;
        }
    }
    let d = *seq.last().expect("nonempty");
    let other = if d == a { b } else { a };
    nodes.push(Node { pos: seq.len(), d, e: third(d, other), f: other });
    Ok(SeedSegmentation { seq: seq.to_vec(), nodes })
}

/// An expansion at node `node`, in that node's context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeExpansion {
    pub node: usize,
    pub poly: LaurentPolynomial,
}

/// The three sums at a node plus the buckets of negative `x_e` powers.
///
/// `sum1` holds `x_f^u x{d}'^a x{e}''^b` (the regrouped buckets), `sum2` holds
/// `x_f^u x{d}'^a x_e^b`, `sum3` holds `x_f^u x_d^a x_e^b`. `residual` keeps
/// whatever could not be regrouped; it is zero whenever the checks pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSumDecomposition {
    pub node: usize,
    pub sum1: LaurentPolynomial,
    pub sum2: LaurentPolynomial,
    pub sum3: LaurentPolynomial,
    /// θ -> (P_{θ,2}, P_{θ,3}), terms carrying `x_e^{-θ}`
    pub negative_e_terms: BTreeMap<i64, (LaurentPolynomial, LaurentPolynomial)>,
    pub residual: LaurentPolynomial,
}

impl ThreeSumDecomposition {
    /// Everything except the raw buckets, i.e. the regrouped expansion.
    pub fn total(&self) -> Result<LaurentPolynomial> {
        self.sum1.add(&self.sum2)?.add(&self.sum3)?.add(&self.residual)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let buckets: Vec<serde_json::Value> = self
            .negative_e_terms
            .iter()
            .map(|(th, (p2, p3))| serde_json::json!({"theta": th, "p2": p2.to_json(), "p3": p3.to_json()}))
            .collect();
        serde_json::json!({
            "node": self.node,
            "sum1": self.sum1.to_json(),
            "sum2": self.sum2.to_json(),
            "sum3": self.sum3.to_json(),
            "buckets": buckets,
            "residual": self.residual.to_json(),
        })
    }
}

/// Outcome of the checks on one θ bucket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaStatus {
    pub theta: i64,
    pub p2_terms: usize,
    pub p3_terms: usize,
    pub p3_zero: bool,
    pub divisible: bool,
    pub quotient_nonnegative: bool,
}

impl ThetaStatus {
    pub fn passed(&self) -> bool {
        self.p3_zero && self.divisible && self.quotient_nonnegative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PThetaReport {
    pub node: usize,
    pub buckets: Vec<ThetaStatus>,
    pub passed: bool,
}

/// A mutation sequence together with the quivers at its nodes.
pub struct Chain {
    seg: SeedSegmentation,
    quivers: Vec<ExchangeMatrix>,
    max_terms: usize,
    cache: RefCell<HashMap<Rank3Params, Arc<LaurentPolynomial>>>,
}

impl Chain {
    /// `b0` is the quiver at `t_0`; `seq` leads from `t_0` to the end seed.
    pub fn new(b0: &ExchangeMatrix, seq: &[usize]) -> Result<Self> {
        b0.validate()?;
        if b0.rank != 3 || b0.ncoeff() != 0 {
            return Err(Error::InvalidArgument("the pipeline needs a coefficient-free rank 3 matrix".into()));
        }
        let seg = segment_sequence(seq)?;
        let quivers = seg.nodes.iter().map(|n| b0.mutate_seq(&seq[..n.pos])).collect::<Result<Vec<_>>>()?;
        Ok(Chain { seg, quivers, max_terms: 4_000_000, cache: RefCell::new(HashMap::new()) })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn segmentation(&self) -> &SeedSegmentation {
        &self.seg
    }

    pub fn quiver(&self, j: usize) -> &ExchangeMatrix {
        &self.quivers[j]
    }

    fn node(&self, j: usize) -> Result<Node> {
        self.seg.nodes.get(j).copied().ok_or_else(|| {
            Error::InvalidArgument(format!("node {j} out of range 0..={}", self.seg.last()))
        })
    }

    /// Context `[x1, x2, x3, x{d}', x{e}'']` of node `j`.
    pub fn node_context(&self, j: usize) -> Result<Vars> {
        let n = self.node(j)?;
        Ok(vars(&["x1".to_string(), "x2".into(), "x3".into(), format!("x{}'", n.d), format!("x{}''", n.e)]))
    }

    /// `x_{d_i}^p x_{e_i}^q` at node `i`.
    pub fn monomial_at(&self, i: usize, p: i64, q: i64) -> Result<NodeExpansion> {
        let n = self.node(i)?;
        if p < 0 || q < 0 {
            return Err(Error::InvalidArgument("p and q must be nonnegative".into()));
        }
        let mut e = vec![0i64; 5];
        e[n.d - 1] += p;
        e[n.e - 1] += q;
        Ok(NodeExpansion { node: i, poly: LaurentPolynomial::monomial(self.node_context(i)?, e, 1) })
    }

    /// Whether the mutation class is non-acyclic (the pipeline's standing hypothesis).
    pub fn is_non_acyclic(&self) -> bool {
        cycle_triple(&self.quivers[0]).is_some_and(|(r, s, t)| !is_mutation_acyclic_rank3(r, s, t))
    }

    /// Hybrid parameters for expanding into node `j` (vertex 1 = `d_j`, 2 = `f_j`, 3 = `e_j`).
    fn params_into(&self, j: usize, n: i64, p: i64, q: i64) -> Result<Rank3Params> {
        let nd = self.node(j)?;
        let b = &self.quivers[j].b;
        let r0 = b[nd.d - 1][nd.f - 1];
        let sg = if r0 < 0 { -1 } else { 1 };
        Ok(Rank3Params::new(sg * r0, sg * b[nd.e - 1][nd.d - 1], sg * b[nd.f - 1][nd.e - 1], n, p, q))
    }

    fn hybrid(&self, pr: Rank3Params) -> Result<Arc<LaurentPolynomial>> {
        if let Some(h) = self.cache.borrow().get(&pr) {
            return Ok(h.clone());
        }
        let h = if pr.p == 0 && pr.q == 0 {
            LaurentPolynomial::one(crate::formulas::ctx_hybrid())
        } else {
            hybrid_expand(pr)?.total()?
        };
        let h = Arc::new(h);
        self.cache.borrow_mut().insert(pr, h.clone());
        Ok(h)
    }

    /// Exchange binomial `N` with `x{e}'' = N / x_e`, in the context of node `j`.
    fn second_exchange(&self, j: usize) -> Result<LaurentPolynomial> {
        let n = self.node(j)?;
        let bp = self.quivers[j].mutate(n.d)?;
        let mut plus = vec![0i64; 5];
        let mut minus = vec![0i64; 5];
        for i in 1..=3 {
            if i == n.e {
                continue;
            }
            let slot = if i == n.d { 3 } else { i - 1 };
            let b = bp.b[i - 1][n.e - 1];
            plus[slot] = b.max(0);
            minus[slot] = (-b).max(0);
        }
        Ok(LaurentPolynomial::from_terms(self.node_context(j)?, [(plus, BigInt::one()), (minus, BigInt::one())]))
    }

    /// Sorts the terms of a raw node expansion into the three sums and regroups each
    /// bucket `P_{θ,2}` as `x{e}''^θ` times a nonnegative quotient when possible.
    pub fn group_three_sums(&self, raw: &NodeExpansion) -> Result<ThreeSumDecomposition> {
        let j = raw.node;
        let n = self.node(j)?;
        let ctx = self.node_context(j)?;
        let (mut s1, mut s2, mut s3) = (Vec::new(), Vec::new(), Vec::new());
        let mut buckets: BTreeMap<i64, (Vec<(Vec<i64>, BigInt)>, Vec<(Vec<i64>, BigInt)>)> = BTreeMap::new();
        for (m, c) in raw.poly.terms() {
            let ex = &m.0;
            let (ed, ee, edt, eett) = (ex[n.d - 1], ex[n.e - 1], ex[3], ex[4]);
            let misfit = c.is_negative()
                || ed < 0
                || edt < 0
                || eett < 0
                || (ed > 0 && (edt > 0 || eett > 0))
                || (eett > 0 && ee != 0);
            if misfit {
                return Err(Error::TheoremViolation(format!(
                    "term {c}*{ex:?} at node {j} fits none of the three families"
                )));
            }
            let term = (ex.clone(), c.clone());
            if eett > 0 {
                s1.push(term);
            } else if ee >= 0 {
                if ed > 0 {
                    s3.push(term);
                } else {
                    s2.push(term);
                }
            } else {
                let slot = buckets.entry(-ee).or_default();
                if ed > 0 {
                    slot.1.push(term);
                } else {
                    slot.0.push(term);
                }
            }
        }
        let mut sum1 = LaurentPolynomial::from_terms(ctx.clone(), s1);
        let mut residual = LaurentPolynomial::zero(ctx.clone());
        let mut negative_e_terms = BTreeMap::new();
        let big_n = if buckets.is_empty() { None } else { Some(self.second_exchange(j)?) };
        for (theta, (p2, p3)) in buckets {
            let p2 = LaurentPolynomial::from_terms(ctx.clone(), p2);
            let p3 = LaurentPolynomial::from_terms(ctx.clone(), p3);
            match bucket_quotient(&p2, n.e, theta, big_n.as_ref().expect("buckets present"))? {
                Some(qt) if nonnegative(&qt) => {
                    let mut shift = vec![0i64; 5];
                    shift[4] = theta;
                    sum1 = sum1.add(&qt.shift(&shift)?)?;
                }
                _ => residual = residual.add(&p2)?,
            }
            residual = residual.add(&p3)?;
            negative_e_terms.insert(theta, (p2, p3));
        }
        Ok(ThreeSumDecomposition {
            node: j,
            sum1,
            sum2: LaurentPolynomial::from_terms(ctx.clone(), s2),
            sum3: LaurentPolynomial::from_terms(ctx, s3),
            negative_e_terms,
            residual,
        })
    }

    /// Status of every bucket of `dec` (no error on failure).
    pub fn p_theta_statuses(&self, dec: &ThreeSumDecomposition) -> Result<PThetaReport> {
        let n = self.node(dec.node)?;
        let mut out = Vec::new();
        let big_n = if dec.negative_e_terms.is_empty() { None } else { Some(self.second_exchange(dec.node)?) };
        for (&theta, (p2, p3)) in &dec.negative_e_terms {
            let qt = bucket_quotient(p2, n.e, theta, big_n.as_ref().expect("buckets present"))?;
            out.push(ThetaStatus {
                theta,
                p2_terms: p2.len(),
                p3_terms: p3.len(),
                p3_zero: p3.is_zero(),
                divisible: qt.is_some(),
                quotient_nonnegative: qt.as_ref().is_some_and(nonnegative),
            });
        }
        let passed = out.iter().all(ThetaStatus::passed);
        Ok(PThetaReport { node: dec.node, buckets: out, passed })
    }

    /// Checks `P_{θ,3} = 0` and exact division of `P_{θ,2} x_e^θ` by `N^θ` with a
    /// nonnegative quotient, for every bucket.
    pub fn verify_p_theta(&self, dec: &ThreeSumDecomposition) -> Result<PThetaReport> {
        let rep = self.p_theta_statuses(dec)?;
        if let Some(bad) = rep.buckets.iter().find(|b| !b.passed()) {
            return Err(Error::TheoremViolation(format!("node {}: bucket {bad:?}", dec.node)));
        }
        Ok(rep)
    }

    fn group_strict(&self, raw: &NodeExpansion) -> Result<ThreeSumDecomposition> {
        let dec = self.group_three_sums(raw)?;
        if !dec.residual.is_zero() {
            self.verify_p_theta(&dec)?;
            return Err(Error::TheoremViolation(format!("node {}: residual terms left after grouping", dec.node)));
        }
        Ok(dec)
    }

    /// Expands the grouped expansion at node `j` into node `j + 1`.
    pub fn step(&self, dec: &ThreeSumDecomposition) -> Result<NodeExpansion> {
        let j = dec.node;
        if j >= self.seg.last() {
            return Err(Error::InvalidArgument(format!("node {j} is the last node")));
        }
        let (nd, nx) = (self.node(j)?, self.node(j + 1)?);
        if nx.e != nd.f {
            return Err(Error::InternalConsistency(format!("node {}: e != previous f", j + 1)));
        }
        let len = (nx.pos - nd.pos) as i64;
        let lead = self.seg.seq[nd.pos];
        let other = if lead == nd.d { nd.e } else { nd.d };
        let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for part in [&dec.sum1, &dec.sum2, &dec.sum3, &dec.residual] {
            for (m, c) in part.terms() {
                let ex = &m.0;
                let (ef, edt, eett) = (ex[nd.f - 1], ex[3], ex[4]);
                let (n, p, q) = if eett > 0 {
                    (len + 3, eett, edt)
                } else if edt > 0 {
                    (len + 2, edt, ex[nd.e - 1])
                } else {
                    (len + 1, ex[lead - 1], ex[other - 1])
                };
                if (eett > 0 || edt > 0) && lead != nd.e {
                    return Err(Error::InternalConsistency(format!("mutated variables at node {j}")));
                }
                if p < 0 || q < 0 {
                    return Err(Error::TheoremViolation(format!("negative exponent in {ex:?} at node {j}")));
                }
                let h = self.hybrid(self.params_into(j + 1, n, p, q)?)?;
                for (hm, hc) in h.terms() {
                    let mut e = vec![0i64; 5];
                    e[nx.d - 1] += hm.0[0];
                    e[nx.f - 1] += hm.0[1];
                    e[3] += hm.0[2];
                    e[nx.e - 1] += hm.0[3] + ef;
                    *acc.entry(e).or_default() += c * hc;
                }
                if acc.len() > self.max_terms {
                    return Err(Error::ResourceLimit(format!("more than {} terms at node {}", self.max_terms, j + 1)));
                }
            }
        }
        Ok(NodeExpansion { node: j + 1, poly: LaurentPolynomial::from_terms(self.node_context(j + 1)?, acc) })
    }

    /// Raw expansion at node `j` of `x_{d_i}^p x_{e_i}^q` from node `i`.
    pub fn expand_at_node(&self, i: usize, p: i64, q: i64, j: usize) -> Result<NodeExpansion> {
        Ok(self.trace(i, p, q, j)?.pop().expect("nonempty").0)
    }

    /// Raw expansion and grouping at every node from `i` to `j`.
    pub fn trace(&self, i: usize, p: i64, q: i64, j: usize) -> Result<Vec<(NodeExpansion, ThreeSumDecomposition)>> {
        if i > j {
            return Err(Error::InvalidArgument(format!("start node {i} after target node {j}")));
        }
        self.node(j)?;
        if i < j && !self.is_non_acyclic() {
            let (r, s, t) = cycle_triple(&self.quivers[0]).unwrap_or((0, 0, 0));
            return Err(Error::AcyclicInput { r, s, t });
        }
        let mut raw = self.monomial_at(i, p, q)?;
        let mut out = Vec::new();
        loop {
            let dec = if raw.node < j { self.group_strict(&raw)? } else { self.group_three_sums(&raw)? };
            let done = raw.node == j;
            let next = if done { None } else { Some(self.step(&dec)?) };
            out.push((raw, dec));
            match next {
                Some(nx) => raw = nx,
                None => break,
            }
        }
        Ok(out)
    }

    /// Replaces `x{d}'` and `x{e}''` by their expressions in the cluster of node `j`.
    pub fn flatten(&self, j: usize, poly: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let n = self.node(j)?;
        let s0 = Seed::initial_with_names(self.quivers[j].clone(), &FLAT)?;
        let s1 = s0.mutate(n.d)?;
        let s2 = s1.mutate(n.e)?;
        let mut images = s0.cluster.clone();
        images.push(s1.cluster[n.d - 1].clone());
        images.push(s2.cluster[n.e - 1].clone());
        poly.substitute(&images)
    }

    /// Oracle expansion of `x_{d_i}^p x_{e_i}^q` (node `i`) in the cluster of node `j`.
    pub fn oracle_at_node(&self, i: usize, p: i64, q: i64, j: usize, budget: Option<&Budget>) -> Result<LaurentPolynomial> {
        let (ni, nj) = (self.node(i)?, self.node(j)?);
        if i > j {
            return Err(Error::InvalidArgument(format!("start node {i} after target node {j}")));
        }
        let mut seed = Seed::initial_with_names(self.quivers[j].clone(), &FLAT)?;
        for &k in self.seg.seq[ni.pos..nj.pos].iter().rev() {
            seed = seed.mutate_with_budget(k, budget)?;
        }
        seed.cluster[ni.d - 1].pow(p as u64)?.mul(&seed.cluster[ni.e - 1].pow(q as u64)?)
    }
}

fn nonnegative(p: &LaurentPolynomial) -> bool {
    p.min_coefficient().is_none_or(|c| !c.is_negative())
}

/// `P x_e^θ / N^θ`, or `None` when the division is not exact.
fn bucket_quotient(p2: &LaurentPolynomial, e: usize, theta: i64, big_n: &LaurentPolynomial) -> Result<Option<LaurentPolynomial>> {
    if p2.is_zero() {
        return Ok(Some(p2.clone()));
    }
    let mut shift = vec![0i64; 5];
    shift[e - 1] = theta;
    let num = p2.shift(&shift)?;
    match num.div_exact(&big_n.pow(theta as u64)?) {
        Ok(q) => Ok(Some(q)),
        Err(Error::NotDivisible(_)) => Ok(None),
        Err(other) => Err(other),
    }
}

/// Multiplicities `(r, s, t)` when `b` is an oriented 3-cycle `1 -> 2 -> 3 -> 1`
/// or its reverse, read as in `ExchangeMatrix::rank3_cycle`.
pub fn cycle_triple(b: &ExchangeMatrix) -> Option<(i64, i64, i64)> {
    if b.rank != 3 {
        return None;
    }
    let sg = b.b[0][1].signum();
    let (r, t, s) = (sg * b.b[0][1], sg * b.b[1][2], sg * b.b[2][0]);
    (r > 0 && s > 0 && t > 0).then_some((r, s, t))
}

/// Per-node summary for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub node: usize,
    pub pos: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub raw_terms: usize,
    pub sum_terms: [usize; 3],
    pub buckets: Vec<ThetaStatus>,
    /// flattened pipeline result equals the oracle; `None` when the oracle hit its budget
    pub matches_oracle: Option<bool>,
}

/// Pipeline run for one cluster variable of `t_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableReport {
    pub vertex: usize,
    pub start_node: usize,
    pub nodes: Vec<NodeReport>,
    /// minimum coefficient of the final flattened expansion
    pub min_coefficient: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub segmentation: SeedSegmentation,
    pub variables: Vec<VariableReport>,
    pub passed: bool,
}

/// Runs the pipeline for each cluster variable of `t_0`, checking the buckets at
/// every node and comparing each node with the oracle.
pub fn verify_sequence(b0: &ExchangeMatrix, seq: &[usize], budget: Option<&Budget>) -> Result<VerifyReport> {
    let chain = Chain::new(b0, seq)?;
    let seg = chain.segmentation().clone();
    let last = seg.last();
    let n0 = seg.nodes[0];
    // x_f of t_0 is untouched until node 1, where it is x_e.
    let mut starts = vec![(n0.d, 0usize, 1i64, 0i64), (n0.e, 0, 0, 1)];
    starts.push(if last >= 1 { (n0.f, 1, 0, 1) } else { (n0.f, 0, 0, 0) });
    let mut variables = Vec::new();
    for (vertex, start, p, q) in starts {
        if last == 0 {
            variables.push(VariableReport { vertex, start_node: 0, nodes: Vec::new(), min_coefficient: Some("1".into()), passed: true });
            continue;
        }
        let trace = chain.trace(start, p, q, last)?;
        let mut nodes = Vec::new();
        let mut passed = true;
        for (raw, dec) in &trace {
            let nd = seg.nodes[raw.node];
            let rep = chain.p_theta_statuses(dec)?;
            let flat = chain.flatten(raw.node, &raw.poly)?;
            let matches_oracle = match chain.oracle_at_node(start, p, q, raw.node, budget) {
                Ok(o) => Some(o == flat),
                Err(Error::ResourceLimit(_)) => None,
                Err(e) => return Err(e),
            };
            passed &= rep.passed && dec.residual.is_zero() && matches_oracle != Some(false);
            nodes.push(NodeReport {
                node: raw.node,
                pos: nd.pos,
                d: nd.d,
                e: nd.e,
                f: nd.f,
                raw_terms: raw.poly.len(),
                sum_terms: [dec.sum1.len(), dec.sum2.len(), dec.sum3.len()],
                buckets: rep.buckets,
                matches_oracle,
            });
        }
        let (raw, _) = trace.last().expect("nonempty");
        let flat = chain.flatten(raw.node, &raw.poly)?;
        let min = flat.min_coefficient();
        passed &= min.as_ref().is_none_or(|c| !c.is_negative());
        variables.push(VariableReport { vertex, start_node: start, nodes, min_coefficient: min.map(|c| c.to_string()), passed });
    }
    let passed = variables.iter().all(|v| v.passed);
    Ok(VerifyReport { segmentation: seg, variables, passed })
}

/// Minimum coefficient of one cluster variable met along a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableMin {
    /// number of mutations applied before this variable appears
    pub step: usize,
    pub vertex: usize,
    pub terms: usize,
    pub min_coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub sequence: Vec<usize>,
    pub variables: Vec<VariableMin>,
    pub positive: bool,
}

fn variable_min(step: usize, vertex: usize, p: &LaurentPolynomial) -> VariableMin {
    let min = p.min_coefficient().unwrap_or_else(BigInt::zero);
    VariableMin { step, vertex, terms: p.len(), min_coefficient: min.to_string() }
}

fn is_positive(v: &VariableMin) -> bool {
    !v.min_coefficient.starts_with('-') && v.min_coefficient != "0"
}

/// Oracle expansion of every cluster variable along `seq` from the initial seed of `b`.
pub fn check_positivity(b: &ExchangeMatrix, seq: &[usize], budget: Option<&Budget>) -> Result<PositivityReport> {
    if b.rank != 3 {
        return Err(Error::InvalidArgument("check_positivity expects a rank 3 matrix".into()));
    }
    let mut seed = Seed::initial(b.clone())?;
    let mut variables: Vec<VariableMin> =
        seed.cluster.iter().enumerate().map(|(i, p)| variable_min(0, i + 1, p)).collect();
    for (step, &k) in seq.iter().enumerate() {
        seed = seed.mutate_with_budget(k, budget)?;
        variables.push(variable_min(step + 1, k, &seed.cluster[k - 1]));
    }
    let positive = variables.iter().all(is_positive);
    Ok(PositivityReport { sequence: seq.to_vec(), variables, positive })
}

/// Result of checking every sequence up to a given length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_len: usize,
    /// sequences of length `max_len` whose variables were all expanded
    pub full_sequences: usize,
    pub variables_checked: usize,
    pub counterexamples: Vec<Vec<usize>>,
    /// sequences whose last exchange was refused by the budget
    pub resource_limited: Vec<Vec<usize>>,
    pub all_positive: bool,
    pub complete: bool,
}

/// Depth-first sweep over all sequences of length `<= max_len` without repeated
/// consecutive vertices. Subtrees refused by the budget are recorded and skipped.
pub fn positivity_sweep(b: &ExchangeMatrix, max_len: usize, budget: Option<&Budget>) -> Result<SweepReport> {
    if b.rank != 3 {
        return Err(Error::InvalidArgument("positivity_sweep expects a rank 3 matrix".into()));
    }
    let mut rep = SweepReport {
        max_len,
        full_sequences: 0,
        variables_checked: 3,
        counterexamples: Vec::new(),
        resource_limited: Vec::new(),
        all_positive: true,
        complete: true,
    };
    let mut stack = vec![(Vec::<usize>::new(), Seed::initial(b.clone())?)];
    while let Some((seq, seed)) = stack.pop() {
        if seq.len() == max_len {
            rep.full_sequences += 1;
            continue;
        }
        for k in (1..=3).rev() {
            if seq.last() == Some(&k) {
                continue;
            }
            let mut next = seq.clone();
            next.push(k);
            match seed.mutate_with_budget(k, budget) {
                Ok(s) => {
                    rep.variables_checked += 1;
                    if !is_positive(&variable_min(next.len(), k, &s.cluster[k - 1])) {
                        rep.counterexamples.push(next.clone());
                    }
                    stack.push((next, s));
                }
                Err(Error::ResourceLimit(_)) => rep.resource_limited.push(next),
                Err(e) => return Err(e),
            }
        }
    }
    rep.resource_limited.sort();
    rep.all_positive = rep.counterexamples.is_empty();
    rep.complete = rep.resource_limited.is_empty();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmentation_examples() {
        let s = segment_sequence(&[2, 1, 3, 1, 2, 1]).unwrap();
        assert_eq!(s.breakpoints(), vec![0, 2, 4, 6]);
        assert_eq!(s.pairs(), vec![(2, 1), (1, 3), (1, 2)]);
        assert_eq!(s.nodes[2], Node { pos: 4, d: 1, e: 2, f: 3 });
        assert_eq!(segment_sequence(&[1, 2, 1, 2]).unwrap().breakpoints(), vec![0, 4]);
        assert_eq!(segment_sequence(&[1, 2, 3]).unwrap().breakpoints(), vec![0, 2, 3]);
        assert!(segment_sequence(&[1, 1]).is_err());
        assert!(segment_sequence(&[4]).is_err());
        assert_eq!(segment_sequence(&[]).unwrap().nodes.len(), 1);
    }

    #[test]
    fn segments_share_one_vertex() {
        let s = segment_sequence(&[1, 2, 3, 2, 1, 3, 1, 3, 2]).unwrap();
        for j in 0..s.last() {
            let (a, b) = (s.nodes[j].d, s.nodes[j].e);
            assert!(s.block(j).iter().all(|&v| v == a || v == b));
        }
        for w in s.pairs().windows(2) {
            let shared = [w[0].0, w[0].1].iter().filter(|v| **v == w[1].0 || **v == w[1].1).count();
            assert_eq!(shared, 1);
        }
    }

    #[test]
    fn single_block_expansion_matches_oracle() {
        let b = ExchangeMatrix::rank3_cycle(2, 2, 2);
        let chain = Chain::new(&b, &[1, 2, 1, 2, 1]).unwrap();
        for (p, q) in [(1, 0), (0, 1), (2, 1)] {
            let raw = chain.expand_at_node(0, p, q, 1).unwrap();
            let flat = chain.flatten(1, &raw.poly).unwrap();
            assert_eq!(flat, chain.oracle_at_node(0, p, q, 1, None).unwrap());
        }
    }

    #[test]
    fn walks_222_pass() {
        let b = ExchangeMatrix::rank3_cycle(2, 2, 2);
        for seq in [vec![1, 2, 3], vec![2, 1, 3, 1, 2, 1], vec![3, 1, 2, 3, 1, 2], vec![1, 3, 1, 2, 1, 3, 2, 3]] {
            let rep = verify_sequence(&b, &seq, None).unwrap();
            assert!(rep.passed, "{seq:?}: {rep:?}");
            assert!(rep.variables.iter().flat_map(|v| &v.nodes).all(|n| n.matches_oracle == Some(true)));
        }
    }

    #[test]
    fn oracle_positivity_small() {
        let b = ExchangeMatrix::rank3_cycle(2, 2, 2);
        let rep = check_positivity(&b, &[1, 2, 3, 1], None).unwrap();
        assert!(rep.positive);
        assert_eq!(rep.variables.len(), 7);
        assert!(check_positivity(&b, &[], None).unwrap().positive);
    }

    #[test]
    fn acyclic_chain_rejected() {
        let b = ExchangeMatrix::rank3_cycle(1, 1, 1);
        let chain = Chain::new(&b, &[1, 2, 3]).unwrap();
        assert!(matches!(chain.trace(0, 1, 0, 2), Err(Error::AcyclicInput { .. })));
    }
}

#[cfg(test)]
mod worked_example {
    use super::*;

    const SIXTEEN: &str = "x2^-1*x3^-6*x1'^9 + 6*x2^2*x3^-6*x1'^7 + 15*x2^5*x3^-6*x1'^5 + 20*x2^8*x3^-6*x1'^3 \
        + 15*x2^11*x3^-6*x1' + 3*x2^2*x3^-4*x1'^5 + 12*x2^5*x3^-4*x1'^3 + 18*x2^8*x3^-4*x1' \
        + 3*x2^5*x3^-2*x1' + 6*x1*x2^11*x3^-6 + x1^3*x2^8*x3^-6 + 6*x1*x2^8*x3^-4 \
        + x2^-1*x3^-3*x1'^6 + 3*x2^2*x3^-3*x1'^4 + 3*x2^5*x3^-3*x1'^2 + x2^8*x3^-3";

    #[test]
    fn reproduces_displayed_terms() {
        let b = ExchangeMatrix::rank3_cycle(3, 7, 3);
        let chain = Chain::new(&b, &[2, 1, 3, 1]).unwrap();
        assert_eq!(chain.quiver(1).b, vec![vec![0, 3, -2], vec![-3, 0, 3], vec![2, -3, 0]]);
        assert_eq!(chain.quiver(2).b, chain.quiver(1).b);
        let t1 = chain.expand_at_node(0, 1, 0, 1).unwrap();
        let want = LaurentPolynomial::parse(chain.node_context(1).unwrap(), "x2^-1*x1'^3 + x2^-1*x3^3").unwrap();
        assert_eq!(t1.poly, want);
        let t2 = chain.expand_at_node(0, 1, 0, 2).unwrap();
        let want = LaurentPolynomial::parse(chain.node_context(2).unwrap(), SIXTEEN).unwrap();
        assert_eq!(want.len(), 16);
        assert_eq!(t2.poly, want);
        let dec = chain.group_three_sums(&t2).unwrap();
        let ctx = chain.node_context(2).unwrap();
        assert_eq!(dec.sum1, LaurentPolynomial::parse(ctx.clone(), "x3^-6*x1'^6*x2''").unwrap());
        assert_eq!(dec.sum2.len(), 11);
        assert_eq!(dec.sum3.len(), 3);
        assert!(dec.residual.is_zero());
        assert_eq!(dec.negative_e_terms.keys().copied().collect::<Vec<_>>(), vec![1]);
        let rep = chain.verify_p_theta(&dec).unwrap();
        assert!(rep.passed && rep.buckets.iter().all(|b| b.p3_zero));
        let flat = chain.flatten(2, &t2.poly).unwrap();
        assert_eq!(flat, chain.oracle_at_node(0, 1, 0, 2, None).unwrap());
    }
}
