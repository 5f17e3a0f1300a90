//! Closed-form expansions: the rank 2 greedy (Dyck path) formula, F-polynomials
//! and principal coefficients, the rank 3 Dyck path formula for cluster
//! monomials, the tau-sum ("mixed") formula, the hybrid of the two, and the
//! Chebyshev divisibility statement.
//!
//! Rank 3 formulas use the quiver `1 -> 2` (r arrows), `2 -> 3` (t), `3 -> 1` (s)
//! and the variables `(x1, x2, z3)`; `x_n` is the variable reached from the
//! initial seed by the alternating sequence 1, 2, 1, … of length n-2.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dyck::{cheb_path, enum_cap, for_each_compatible, pair_counts, CompatiblePair, DyckPath, PairCounts};
use crate::error::{Error, Result};
use crate::laurent::{vars, LaurentPolynomial, Vars};
use crate::mutation::is_mutation_acyclic_rank3;
use crate::sequences::{a_coeff, cheb, mod_binom, weighted_sums_of};

pub fn ctx_rank2() -> Vars {
    vars(&["x1", "x2"])
}

pub fn ctx_rank3() -> Vars {
    vars(&["x1", "x2", "z3"])
}

/// Context of hybrid expansions; `x3` stands for `(x2^r + z3^s)/x1`.
pub fn ctx_hybrid() -> Vars {
    vars(&["x1", "x2", "x3", "z3"])
}

pub fn ctx_principal() -> Vars {
    vars(&["x1", "x2", "y1", "y2"])
}

pub fn ctx_f() -> Vars {
    vars(&["y1", "y2"])
}

fn ru(r: i64) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
    }
    Ok(r as usize)
}

/// `Σ N(a,b) · x^{(f)(a,b)}` over the compatible pairs of `path`, N counting pairs with
/// `|S1| = a`, `|S2| = b`.
fn pair_poly(
    ctx: &Vars,
    path: &DyckPath,
    r: usize,
    exps: impl Fn(i64, i64) -> Vec<i64>,
) -> Result<LaurentPolynomial> {
    let counts = pair_counts(path, r, enum_cap())?;
    Ok(LaurentPolynomial::from_terms(
        ctx.clone(),
        counts.iter().map(|(&(a, b), &n)| (exps(a as i64, b as i64), BigInt::from(n))),
    ))
}

/// Rank 2 cluster variable `x_n` for `r` arrows, any integer `n`.
pub fn greedy_rank2(r: i64, n: i64) -> Result<LaurentPolynomial> {
    let rr = ru(r)?;
    let ctx = ctx_rank2();
    match n {
        1 => return Ok(LaurentPolynomial::var(ctx, 0)),
        2 => return Ok(LaurentPolynomial::var(ctx, 1)),
        _ => {}
    }
    // x_{3-m} is x_m with x1 and x2 exchanged
    let (m, swap) = if n >= 3 { (n, false) } else { (3 - n, true) };
    let path = cheb_path(r, m)?;
    let sum = pair_poly(&ctx, &path, rr, |a, b| vec![r * b, r * a])?;
    let x = sum.shift(&[-cheb(r, m - 1)?, -cheb(r, m - 2)?])?;
    Ok(if swap { x.remap(ctx.clone(), &[Some(1), Some(0)]) } else { x })
}

/// F-polynomial in `(y1, y2)` and g-vector of `x_n`, any integer `n`.
pub fn f_poly_and_g(r: i64, n: i64) -> Result<(LaurentPolynomial, (i64, i64))> {
    let rr = ru(r)?;
    let ctx = ctx_f();
    match n {
        1 => return Ok((LaurentPolynomial::one(ctx), (1, 0))),
        2 => return Ok((LaurentPolynomial::one(ctx), (0, 1))),
        _ => {}
    }
    if n >= 3 {
        let c = cheb(r, n - 1)?;
        let f = pair_poly(&ctx, &cheb_path(r, n)?, rr, |a, b| vec![c - a, b])?;
        Ok((f, (-c, cheb(r, n)?)))
    } else {
        let m = 3 - n;
        let c = cheb(r, m - 2)?;
        let f = pair_poly(&ctx, &cheb_path(r, m)?, rr, |a, b| vec![c - b, a])?;
        Ok((f, (-c, cheb(r, m - 3)?)))
    }
}

/// Principal-coefficient expansion `X_n` in `(x1, x2, y1, y2)`, `n >= 3`.
pub fn principal_x(r: i64, n: i64) -> Result<LaurentPolynomial> {
    let rr = ru(r)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("principal_x needs n >= 3, got {n}")));
    }
    let c1 = cheb(r, n - 1)?;
    let sum = pair_poly(&ctx_principal(), &cheb_path(r, n)?, rr, |a, b| vec![r * b, r * a, c1 - a, b])?;
    sum.shift(&[-c1, -cheb(r, n - 2)?, 0, 0])
}

/// Parameters of the rank 3 formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank3Params {
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub n: i64,
    pub p: i64,
    pub q: i64,
}

impl Rank3Params {
    pub fn new(r: i64, s: i64, t: i64, n: i64, p: i64, q: i64) -> Self {
        Rank3Params { r, s, t, n, p, q }
    }

    pub fn var(r: i64, s: i64, t: i64, n: i64) -> Self {
        Self::new(r, s, t, n, 0, 1)
    }

    fn check(&self, min_n: i64) -> Result<()> {
        ru(self.r)?;
        if is_mutation_acyclic_rank3(self.r, self.s, self.t) {
            return Err(Error::AcyclicInput { r: self.r, s: self.s, t: self.t });
        }
        if self.n < min_n {
            return Err(Error::InvalidArgument(format!("n must be >= {min_n}, got {}", self.n)));
        }
        if self.p < 0 || self.q < 0 {
            return Err(Error::InvalidArgument("p and q must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn a(&self, i: i64) -> Result<i64> {
        a_coeff(self.p, self.q, self.r, i)
    }

    /// `s' = rs - t` (arrows 3 -> 2 after mutating at 1).
    pub fn s_prime(&self) -> i64 {
        self.r * self.s - self.t
    }

    /// `t' = s` (arrows 1 -> 3 after mutating at 1).
    pub fn t_prime(&self) -> i64 {
        self.s
    }
}

/// Per-path polynomial `Σ N(a,b) x1^{rb} x2^{ra} z3^{-sa-tb}`.
fn rank3_path_poly(path: &DyckPath, r: i64, s: i64, t: i64) -> Result<LaurentPolynomial> {
    pair_poly(&ctx_rank3(), path, r as usize, |a, b| vec![r * b, r * a, -s * a - t * b])
}

/// Rank 3 cluster variable `x_n`, `n >= 1`, by the Dyck path formula.
pub fn rank3_dyck(r: i64, s: i64, t: i64, n: i64) -> Result<LaurentPolynomial> {
    let pr = Rank3Params::var(r, s, t, n);
    pr.check(1)?;
    let ctx = ctx_rank3();
    match n {
        1 => return Ok(LaurentPolynomial::var(ctx, 0)),
        2 => return Ok(LaurentPolynomial::var(ctx, 1)),
        _ => {}
    }
    let c1 = cheb(r, n - 1)?;
    let sum = rank3_path_poly(&cheb_path(r, n)?, r, s, t)?;
    sum.shift(&[-c1, -cheb(r, n - 2)?, s * c1])
}

/// Cluster monomial `x_{n+1}^p x_n^q` by the Dyck path product formula (n >= 3),
/// using per-path generating polynomials.
///
/// The z3 exponent is `s(A_{n-1} - |S1|) - t|S2|` with `|S1|`, `|S2|` summed over the
/// family; this is the product of the single-variable formulas.
pub fn rank3_monomial(pr: Rank3Params) -> Result<LaurentPolynomial> {
    pr.check(3)?;
    let Rank3Params { r, s, t, n, p, q } = pr;
    let small = rank3_path_poly(&cheb_path(r, n)?, r, s, t)?;
    let big = rank3_path_poly(&cheb_path(r, n + 1)?, r, s, t)?;
    let prod = small.pow(q as u64)?.mul(&big.pow(p as u64)?)?;
    let a1 = pr.a(n - 1)?;
    prod.shift(&[-a1, -pr.a(n - 2)?, s * a1])
}

/// The same sum evaluated family by family (small instances only).
pub fn rank3_monomial_by_families(pr: Rank3Params) -> Result<LaurentPolynomial> {
    pr.check(3)?;
    let Rank3Params { r, s, t, n, p, q } = pr;
    let a1 = pr.a(n - 1)?;
    let a2 = pr.a(n - 2)?;
    let mut map: HashMap<Vec<i64>, BigInt> = HashMap::new();
    crate::dyck::for_each_family(r, n, p as usize, q as usize, enum_cap(), |fam| {
        let s1: i64 = fam.iter().map(|c| c.s1.len() as i64).sum();
        let s2: i64 = fam.iter().map(|c| c.s2.len() as i64).sum();
        let e = vec![r * s2 - a1, r * s1 - a2, s * (a1 - s1) - t * s2];
        *map.entry(e).or_default() += 1;
    })?;
    Ok(LaurentPolynomial::from_terms(ctx_rank3(), map))
}

/// Minimizer of `s(c_{n-1} - |S1|) - t|S2|` over compatible pairs of
/// `D^{c_{n-1}×c_{n-2}}`; fails unless the minimizer is unique.
pub fn min_exponent_pair(r: i64, s: i64, t: i64, n: i64) -> Result<(CompatiblePair, i64)> {
    Rank3Params::var(r, s, t, n).check(3)?;
    let path = cheb_path(r, n)?;
    let c1 = cheb(r, n - 1)?;
    let mut best: Option<(i64, Vec<CompatiblePair>)> = None;
    for_each_compatible(&path, r as usize, enum_cap(), |s1, s2| {
        let m = s * (c1 - s1.len() as i64) - t * s2.len() as i64;
        let pair = CompatiblePair { s1: s1.to_vec(), s2: s2.to_vec() };
        match &mut best {
            Some((bm, list)) if *bm == m => list.push(pair),
            Some((bm, _)) if *bm < m => {}
            _ => best = Some((m, vec![pair])),
        }
    })?;
    let (m, list) = best.expect("at least the empty pair");
    if list.len() != 1 {
        return Err(Error::InternalConsistency(format!("{} pairs achieve the minimum {m}", list.len())));
    }
    Ok((list.into_iter().next().expect("one"), m))
}

/// One admissible tuple of the tau-sum formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauTerm {
    pub taus: Vec<i64>,
    /// product of modified binomials `Π [A_{i+1} - r s_i; τ_i]`
    pub coef: BigInt,
    /// weighted sums `s_0..s_{n-1}`
    pub s: Vec<i64>,
}

/// `L_max(τ)` for the tau vector `taus = (τ_0..τ_{n-2})`, with the integer `k` of each element.
pub fn l_max(r: i64, p: i64, taus: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
    ru(r)?;
    let n = taus.len() as i64 + 1;
    if n < 3 {
        return Err(Error::InvalidArgument("L_max needs at least two taus".into()));
    }
    let m = (n - 2) as usize; // free coordinates τ'_0..τ'_{n-3}
    let weights: Vec<i64> = (0..m).map(|j| cheb(r, n - 1 - j as i64)).collect::<Result<_>>()?;
    let c_nm1 = cheb(r, n - 1)?;
    let c_n = cheb(r, n)?;
    let limit = p * c_nm1;
    let mut sols: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut cur = vec![0i64; m];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        acc: i64,
        cur: &mut Vec<i64>,
        taus: &[i64],
        weights: &[i64],
        limit: i64,
        c_nm1: i64,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if j == cur.len() {
            if acc % c_nm1 == 0 {
                out.push((cur.clone(), acc / c_nm1));
            }
            return;
        }
        for v in 0..=taus[j].max(-1) {
            let a = acc + weights[j] * v;
            if a > limit {
                break;
            }
            cur[j] = v;
            rec(j + 1, a, cur, taus, weights, limit, c_nm1, out);
        }
        cur[j] = 0;
    }
    rec(0, 0, &mut cur, taus, &weights, limit, c_nm1, &mut sols);
    let mut out = Vec::new();
    for (i, (a, k)) in sols.iter().enumerate() {
        let dominated = sols
            .iter()
            .enumerate()
            .any(|(j, (b, _))| j != i && b != a && a.iter().zip(b).all(|(x, y)| x <= y));
        if !dominated {
            // τ'_{n-2} from s'_{n-1} = k c_n
            let partial: i64 = a.iter().enumerate().map(|(j, v)| cheb(r, n - j as i64).unwrap() * v).sum();
            let mut full = a.clone();
            full.push(k * c_n - partial);
            out.push((full, *k));
        }
    }
    Ok(out)
}

/// All tuples `(τ_0..τ_{n-2})` admitted by the tau-sum formula for `x_{n+1}^p x_n^q`
/// (n >= 2), ordered lexicographically.
///
/// Bounds: `0 <= τ_i <= A_{i+1} - r s_i` for `i <= n-3`, `τ_{n-2} <= A_{n-1} - r s_{n-2}`,
/// `s_{n-1} >= 0`, and the L_max inequality. For `n = 2` the L_max condition is vacuous
/// (there are no free coordinates to order).
pub fn tau_terms(r: i64, n: i64, p: i64, q: i64) -> Result<Vec<TauTerm>> {
    ru(r)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("tau formula needs n >= 2, got {n}")));
    }
    let a: Vec<i64> = (0..=n).map(|i| a_coeff(p, q, r, i)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut taus = Vec::with_capacity((n - 1) as usize);
    tau_rec(r, n, p, &a, &mut taus, &mut vec![0i64], &mut out)?;
    Ok(out)
}

fn tau_rec(
    r: i64,
    n: i64,
    p: i64,
    a: &[i64],
    taus: &mut Vec<i64>,
    s: &mut Vec<i64>,
    out: &mut Vec<TauTerm>,
) -> Result<()> {
    let i = taus.len() as i64;
    let si = *s.last().expect("s_0");
    let sprev = if s.len() >= 2 { s[s.len() - 2] } else { 0 };
    let upper = a[(i + 1) as usize] - r * si;
    if i < n - 2 {
        for v in 0..=upper {
            taus.push(v);
            s.push(r * si - sprev + v);
            tau_rec(r, n, p, a, taus, s, out)?;
            s.pop();
            taus.pop();
        }
        return Ok(());
    }
    // last coordinate: s_{n-1} = r s_{n-2} - s_{n-3} + τ_{n-2} >= 0
    let lower = sprev - r * si;
    if lower > upper {
        return Ok(());
    }
    let lmax = if n >= 3 {
        let mut probe = taus.clone();
        probe.push(0);
        Some(l_max(r, p, &probe)?)
    } else {
        None
    };
    let (an1, an2) = (a[(n - 1) as usize], a[(n - 2) as usize]);
    for v in lower..=upper {
        taus.push(v);
        s.push(r * si - sprev + v);
        let ok = match &lmax {
            None => true,
            Some(list) => list.iter().all(|(tp, _)| {
                let sp = weighted_sums_of(r, tp).expect("valid r");
                let (sn1, sn2) = (s[(n - 1) as usize], s[(n - 2) as usize]);
                (sn1 - sp[(n - 1) as usize]) * an2 >= (sn2 - sp[(n - 2) as usize]) * an1
            }),
        };
        if ok {
            let mut coef = BigInt::one();
            for (j, &tj) in taus.iter().enumerate() {
                coef *= mod_binom(a[j + 1] - r * s[j], tj);
                if coef.is_zero() {
                    break;
                }
            }
            out.push(TauTerm { taus: taus.clone(), coef, s: s.clone() });
        }
        s.pop();
        taus.pop();
    }
    Ok(())
}

/// Cluster monomial `x_{n+1}^p x_n^q` by the tau-sum formula, `n >= 3`.
pub fn mixed_expand(pr: Rank3Params) -> Result<LaurentPolynomial> {
    pr.check(3)?;
    let Rank3Params { r, s, t, n, p, q } = pr;
    let an1 = pr.a(n - 1)?;
    let an2 = pr.a(n - 2)?;
    let terms = tau_terms(r, n, p, q)?;
    let nu = n as usize;
    Ok(LaurentPolynomial::from_terms(
        ctx_rank3(),
        terms.into_iter().map(|tt| {
            let (s1, s2) = (tt.s[nu - 1], tt.s[nu - 2]);
            (vec![r * s2 - an1, r * (an1 - s1) - an2, s * s1 - t * s2], tt.coef)
        }),
    ))
}

/// Tuples that contribute a nonzero coefficient to [`mixed_expand`].
pub fn mixed_contributing_taus(pr: Rank3Params) -> Result<Vec<Vec<i64>>> {
    pr.check(3)?;
    Ok(tau_terms(pr.r, pr.n, pr.p, pr.q)?
        .into_iter()
        .filter(|t| !t.coef.is_zero())
        .map(|t| t.taus)
        .collect())
}

/// The two sums of the hybrid formula, both in [`ctx_hybrid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridExpansion {
    /// monomials in `x3, x2^{±1}, z3`
    pub sum1: LaurentPolynomial,
    /// monomials in `x1, x2^{±1}, z3`, x1 exponent positive
    pub sum2: LaurentPolynomial,
}

impl HybridExpansion {
    pub fn total(&self) -> Result<LaurentPolynomial> {
        self.sum1.add(&self.sum2)
    }

    /// Substitutes `x3 = (x2^r + z3^s)/x1` and returns a polynomial in `(x1, x2, z3)`.
    pub fn to_rank3(&self, r: i64, s: i64) -> Result<LaurentPolynomial> {
        let ctx = ctx_rank3();
        let x1 = LaurentPolynomial::var(ctx.clone(), 0);
        let x2 = LaurentPolynomial::var(ctx.clone(), 1);
        let z3 = LaurentPolynomial::var(ctx.clone(), 2);
        let x3 = LaurentPolynomial::from_terms(
            ctx.clone(),
            [(vec![-1, r, 0], BigInt::one()), (vec![-1, 0, s], BigInt::one())],
        );
        self.total()?.substitute(&[x1, x2, x3, z3])
    }
}

/// Hybrid expansion of `x_{n+1}^p x_n^q` (n >= 2): tau terms with nonnegative `x3`
/// exponent, plus Dyck path families with `r|S2| > A_{n-1}`.
pub fn hybrid_expand(pr: Rank3Params) -> Result<HybridExpansion> {
    pr.check(2)?;
    let Rank3Params { r, s, t, n, p, q } = pr;
    let ctx = ctx_hybrid();
    if n == 2 {
        let sum1 = LaurentPolynomial::monomial(ctx.clone(), vec![0, q, p, 0], 1);
        return Ok(HybridExpansion { sum1, sum2: LaurentPolynomial::zero(ctx) });
    }
    let (sp, tp) = (pr.s_prime(), pr.t_prime());
    let an1 = pr.a(n - 1)?;
    let an2 = pr.a(n - 2)?;
    let nu = n as usize;
    let mut first = Vec::new();
    for tt in tau_terms(r, n - 1, p, q)? {
        let (s2, s3) = (tt.s[nu - 2], tt.s[nu - 3]);
        if r * s2 > an1 || tt.coef.is_zero() {
            continue;
        }
        first.push((vec![0, r * s3 - an2, an1 - r * s2, sp * s2 - tp * s3], tt.coef));
    }
    let sum1 = LaurentPolynomial::from_terms(ctx.clone(), first);
    let counts = family_counts(r, n, p, q)?;
    let mut second = Vec::new();
    for ((a, b), c) in counts {
        if r * b - an1 > 0 {
            second.push((vec![r * b - an1, r * a - an2, 0, s * (an1 - a) - t * b], c));
        }
    }
    let sum2 = LaurentPolynomial::from_terms(ctx, second);
    for (m, c) in sum1.terms() {
        if c.is_negative() || m.0[2] < 0 || m.0[3] < 0 {
            return Err(Error::InternalConsistency(format!("first hybrid sum term {m:?} coef {c}")));
        }
    }
    for (m, c) in sum2.terms() {
        if c.is_negative() || m.0[0] <= 0 || m.0[3] < 0 {
            return Err(Error::InternalConsistency(format!("second hybrid sum term {m:?} coef {c}")));
        }
    }
    Ok(HybridExpansion { sum1, sum2 })
}

/// Number of families (q small paths, p big paths) by total `(|S1|, |S2|)`.
pub fn family_counts(r: i64, n: i64, p: i64, q: i64) -> Result<HashMap<(i64, i64), BigInt>> {
    let rr = ru(r)?;
    let small = pair_counts(&cheb_path(r, n)?, rr, enum_cap())?;
    let big = pair_counts(&cheb_path(r, n + 1)?, rr, enum_cap())?;
    let mut acc: HashMap<(i64, i64), BigInt> = HashMap::new();
    acc.insert((0, 0), BigInt::one());
    let convolve = |acc: &HashMap<(i64, i64), BigInt>, f: &PairCounts| {
        let mut out: HashMap<(i64, i64), BigInt> = HashMap::new();
        for (&(a, b), c) in acc {
            for (&(x, y), &k) in f.iter() {
                *out.entry((a + x as i64, b + y as i64)).or_default() += c * BigInt::from(k);
            }
        }
        out
    };
    for _ in 0..q {
        acc = convolve(&acc, &small);
    }
    for _ in 0..p {
        acc = convolve(&acc, &big);
    }
    Ok(acc)
}

/// Quotient of the restricted tau-sum (`s_{n-1} = a`, z3 = 1) by `(1 + x1^r)^{ra - A_n}`,
/// in `(x1, x2)`. Requires `r a >= A_n`; a failed division or a negative quotient
/// coefficient is reported as a theorem violation.
pub fn chebyshev_divisibility(r: i64, n: i64, p: i64, q: i64, a: i64) -> Result<LaurentPolynomial> {
    ru(r)?;
    if n < 3 || p < 0 || q < 0 {
        return Err(Error::InvalidArgument("need n >= 3 and p, q >= 0".into()));
    }
    let an = a_coeff(p, q, r, n)?;
    let an1 = a_coeff(p, q, r, n - 1)?;
    let an2 = a_coeff(p, q, r, n - 2)?;
    if r * a < an {
        return Err(Error::InvalidArgument(format!("need r*a >= A_n ({} < {an})", r * a)));
    }
    let nu = n as usize;
    let ctx = ctx_rank2();
    let sum = LaurentPolynomial::from_terms(
        ctx.clone(),
        tau_terms(r, n, p, q)?
            .into_iter()
            .filter(|tt| tt.s[nu - 1] == a)
            .map(|tt| (vec![r * tt.s[nu - 2] - an1, r * (an1 - a) - an2], tt.coef)),
    );
    let base = LaurentPolynomial::from_terms(ctx, [(vec![0, 0], BigInt::one()), (vec![r, 0], BigInt::one())]);
    let divisor = base.pow((r * a - an) as u64)?;
    let quotient = sum.div_exact(&divisor).map_err(|e| match e {
        Error::NotDivisible(m) => Error::TheoremViolation(format!("restricted sum not divisible: {m}")),
        other => other,
    })?;
    if let Some(min) = quotient.min_coefficient() {
        if min.is_negative() {
            return Err(Error::TheoremViolation(format!("negative quotient coefficient {min}")));
        }
    }
    Ok(quotient)
}

/// Admissible `a` for [`chebyshev_divisibility`] up to `A_n`: `ceil(A_n / r) ..= A_n`.
pub fn divisibility_range(r: i64, n: i64, p: i64, q: i64) -> Result<std::ops::RangeInclusive<i64>> {
    let an = a_coeff(p, q, r, n)?;
    let lo = if an <= 0 { 0 } else { (an + r - 1) / r };
    Ok(lo.max(0)..=an)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{oracle_expand, ExchangeMatrix, Seed};

    fn p3(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(ctx_rank3(), s).unwrap()
    }

    #[test]
    fn greedy_small_cases() {
        for r in 2..5 {
            let x3 = greedy_rank2(r, 3).unwrap();
            let expect = LaurentPolynomial::parse(ctx_rank2(), &format!("x1^-1*x2^{r} + x1^-1")).unwrap();
            assert_eq!(x3, expect);
            assert_eq!(greedy_rank2(r, 2).unwrap(), LaurentPolynomial::var(ctx_rank2(), 1));
            let x0 = greedy_rank2(r, 0).unwrap();
            let expect = LaurentPolynomial::parse(ctx_rank2(), &format!("x1^{r}*x2^-1 + x2^-1")).unwrap();
            assert_eq!(x0, expect);
        }
    }

    #[test]
    fn f_and_g_boundary_cases() {
        let (f, g) = f_poly_and_g(3, 3).unwrap();
        assert_eq!(f, LaurentPolynomial::parse(ctx_f(), "y1 + 1").unwrap());
        assert_eq!(g, (-1, 3));
        let (f, g) = f_poly_and_g(3, 0).unwrap();
        assert_eq!(f, LaurentPolynomial::parse(ctx_f(), "y2 + 1").unwrap());
        assert_eq!(g, (0, -1));
        assert_eq!(f_poly_and_g(3, 5).unwrap().1, (-8, 21));
    }

    #[test]
    fn rank3_first_variables() {
        let (r, s, t) = (3, 3, 4);
        assert_eq!(rank3_dyck(r, s, t, 3).unwrap(), p3("x1^-1*x2^3 + x1^-1*z3^3"));
        // x4 = (x3^r + z3^{rs-t})/x2
        let x3 = rank3_dyck(r, s, t, 3).unwrap();
        let num = x3.pow(3).unwrap().add(&p3("z3^5")).unwrap();
        assert_eq!(rank3_dyck(r, s, t, 4).unwrap(), num.div_exact(&p3("x2")).unwrap());
        assert!(matches!(rank3_dyck(2, 2, 3, 4), Err(Error::AcyclicInput { .. })));
    }

    #[test]
    fn rank3_dyck_matches_oracle_222() {
        let seed = Seed::initial_with_names(ExchangeMatrix::rank3_cycle(2, 2, 2), &["x1", "x2", "z3"]).unwrap();
        let s = seed.mutate(1).unwrap().mutate(2).unwrap().mutate(1).unwrap();
        assert_eq!(rank3_dyck(2, 2, 2, 5).unwrap(), s.cluster[0]);
    }

    #[test]
    fn monomial_product_and_family_forms_agree() {
        for (r, s, t) in [(2, 2, 2), (3, 3, 4)] {
            for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
                let pr = Rank3Params::new(r, s, t, 3, p, q);
                let a = rank3_monomial(pr).unwrap();
                assert_eq!(a, rank3_monomial_by_families(pr).unwrap());
                let direct = rank3_dyck(r, s, t, 4)
                    .unwrap()
                    .pow(p as u64)
                    .unwrap()
                    .mul(&rank3_dyck(r, s, t, 3).unwrap().pow(q as u64).unwrap())
                    .unwrap();
                assert_eq!(a, direct);
            }
        }
        let pr = Rank3Params::new(2, 2, 2, 4, 1, 1);
        let prod = rank3_dyck(2, 2, 2, 5).unwrap().mul(&rank3_dyck(2, 2, 2, 4).unwrap()).unwrap();
        assert_eq!(rank3_monomial(pr).unwrap(), prod);
    }

    #[test]
    fn minimal_pairs() {
        let (pair, m) = min_exponent_pair(2, 2, 2, 4).unwrap();
        assert_eq!(m, 0);
        assert_eq!(pair, CompatiblePair::new(vec![1, 2], vec![]));
        let (pair, m) = min_exponent_pair(3, 7, 3, 4).unwrap();
        assert_eq!((pair.s1.len(), pair.s2.len(), m), (3, 0, 0));
        let (pair, m) = min_exponent_pair(3, 3, 3, 3).unwrap();
        assert_eq!((pair, m), (CompatiblePair::new(vec![1], vec![]), 0));
    }

    #[test]
    fn l_max_examples() {
        assert_eq!(l_max(2, 1, &[0, 0, 1, 1]).unwrap(), vec![(vec![0, 0, 0, 0], 0)]);
        let l = l_max(2, 1, &[0, 1, 1, -2]).unwrap();
        assert!(l.contains(&(vec![0, 1, 1, -1], 1)));
        assert_eq!(l_max(3, 2, &[0, 0, 0]).unwrap(), vec![(vec![0, 0, 0], 0)]);
    }

    #[test]
    fn mixed_example_222() {
        let pr = Rank3Params::new(2, 2, 2, 5, 1, 0);
        let taus = mixed_contributing_taus(pr).unwrap();
        let expect: Vec<Vec<i64>> = vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 2],
            vec![0, 0, 0, 3],
            vec![0, 0, 0, 4],
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 2],
            vec![0, 0, 2, 0],
            vec![0, 0, 3, -2],
            vec![0, 1, 0, 0],
        ];
        assert_eq!(taus, expect);
        assert!(!tau_terms(2, 5, 1, 0).unwrap().iter().any(|t| t.taus == vec![0, 1, 1, -2]));
        let num = p3(
            "x2^8 + 4*x2^6*z3^2 + 6*x2^4*z3^4 + 4*x2^2*z3^6 + z3^8 + 3*x1^2*x2^4*z3^2 \
             + 6*x1^2*x2^2*z3^4 + 3*x1^2*z3^6 + 3*x1^4*z3^4 + x1^6*z3^2 + 2*x1^4*x2^2*z3^2",
        );
        let x6 = num.div_exact(&p3("x1^4*x2^3")).unwrap();
        assert_eq!(mixed_expand(pr).unwrap(), x6);
        assert_eq!(rank3_dyck(2, 2, 2, 6).unwrap(), x6);
    }

    #[test]
    fn hybrid_recovers_mixed() {
        for (r, s, t) in [(2, 2, 2), (3, 3, 4), (3, 7, 3)] {
            for n in 2..=4 {
                for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 0)] {
                    let pr = Rank3Params::new(r, s, t, n, p, q);
                    let h = hybrid_expand(pr).unwrap();
                    let direct = rank3_dyck(r, s, t, n + 1)
                        .unwrap()
                        .pow(p as u64)
                        .unwrap()
                        .mul(&rank3_dyck(r, s, t, n).unwrap().pow(q as u64).unwrap())
                        .unwrap();
                    assert_eq!(h.to_rank3(r, s).unwrap(), direct, "({r},{s},{t}) n={n} p={p} q={q}");
                }
            }
        }
        let h = hybrid_expand(Rank3Params::new(2, 2, 2, 5, 0, 0)).unwrap();
        assert!(h.total().unwrap().is_one());
    }

    #[test]
    fn divisibility_examples() {
        let q = chebyshev_divisibility(2, 4, 1, 0, 2).unwrap();
        assert!(q.min_coefficient().is_none_or(|m| !m.is_negative()));
        // A_4 = 4, r = 2: a = 2 gives exponent 0, the sum itself
        let empty = chebyshev_divisibility(2, 4, 1, 0, 4).unwrap();
        assert!(empty.is_zero() || empty.min_coefficient().unwrap() > BigInt::zero());
        assert!(chebyshev_divisibility(2, 4, 1, 0, 1).is_err());
    }

    #[test]
    fn greedy_equals_oracle_small() {
        let s = oracle_expand(&ExchangeMatrix::rank2(3), &[1, 2, 1]).unwrap();
        assert_eq!(greedy_rank2(3, 5).unwrap(), s.cluster[0]);
    }
}
