//! Exchange matrices, seed mutation and the brute-force expansion oracle.
//!
//! Quiver convention: `b_ij = #(i -> j) - #(j -> i)`. Vertices are 1-based in
//! the public API.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{vars, LaurentPolynomial, Vars};
use crate::sequences::cheb;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub rank: usize,
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_rows: Option<Vec<Vec<i64>>>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let m = ExchangeMatrix { rank: b.len(), b, coeff_rows: None };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        if self.b.len() != n || self.b.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("exchange matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if self.b[i][j] != -self.b[j][i] {
                    return Err(Error::InvalidArgument(format!("matrix not skew-symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        if let Some(rows) = &self.coeff_rows {
            if rows.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidArgument("coefficient rows must have rank columns".into()));
            }
        }
        Ok(())
    }

    /// Rank 2 with `r` arrows `1 -> 2`.
    pub fn rank2(r: i64) -> Self {
        ExchangeMatrix { rank: 2, b: vec![vec![0, r], vec![-r, 0]], coeff_rows: None }
    }

    /// Rank 3 cycle `1 -> 2` (r arrows), `2 -> 3` (t arrows), `3 -> 1` (s arrows).
    pub fn rank3_cycle(r: i64, s: i64, t: i64) -> Self {
        ExchangeMatrix {
            rank: 3,
            b: vec![vec![0, r, -s], vec![-r, 0, t], vec![s, -t, 0]],
            coeff_rows: None,
        }
    }

    /// Extends by an identity block (principal coefficients).
    pub fn with_principal_coefficients(&self) -> Self {
        let rows = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect();
        ExchangeMatrix { coeff_rows: Some(rows), ..self.clone() }
    }

    pub fn ncoeff(&self) -> usize {
        self.coeff_rows.as_ref().map_or(0, |r| r.len())
    }

    /// Number of arrows `i -> j` (1-based).
    pub fn arrows(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1].max(0)
    }

    /// Entry `b̃_ik` of the extended matrix, rows past the rank are coefficient rows.
    fn ext(&self, i: usize, k: usize) -> i64 {
        if i < self.rank {
            self.b[i][k]
        } else {
            self.coeff_rows.as_ref().expect("coefficient row")[i - self.rank][k]
        }
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.rank {
            return Err(Error::InvalidArgument(format!("vertex {k} out of range 1..={}", self.rank)));
        }
        Ok(())
    }

    /// Matrix mutation at `k`, including coefficient rows.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_vertex(k)?;
        let k = k - 1;
        let n = self.rank;
        let rows = n + self.ncoeff();
        let mut out: Vec<Vec<i64>> = vec![vec![0; n]; rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let bij = self.ext(i, j);
                *slot = if i == k || j == k {
                    -bij
                } else {
                    let bik = self.ext(i, k);
                    let prod = bik.checked_mul(self.b[k][j]).ok_or_else(overflow)?;
                    bij.checked_add(bik.signum() * prod.max(0)).ok_or_else(overflow)?
                };
            }
        }
        let coeff_rows = self.coeff_rows.as_ref().map(|_| out.split_off(n));
        Ok(ExchangeMatrix { rank: n, b: out, coeff_rows })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Self> {
        let mut m = self.clone();
        for &k in seq {
            m = m.mutate(k)?;
        }
        Ok(m)
    }
}

fn overflow() -> Error {
    Error::InvalidArgument("arrow count overflow".into())
}

/// An exchange matrix together with a cluster expressed in the initial variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub matrix: ExchangeMatrix,
    pub cluster: Vec<LaurentPolynomial>,
}

/// Default initial variable names: `x1..xn` followed by `y1..ym`.
pub fn default_names(rank: usize, ncoeff: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("x{i}")).chain((1..=ncoeff).map(|i| format!("y{i}"))).collect()
}

impl Seed {
    /// The initial seed with variables `x1..xn` (and `y1..ym` for coefficient rows).
    pub fn initial(matrix: ExchangeMatrix) -> Result<Self> {
        let names = default_names(matrix.rank, matrix.ncoeff());
        Self::initial_with_names(matrix, &names)
    }

    /// The initial seed over the given variable names (cluster first, then coefficients).
    pub fn initial_with_names<S: AsRef<str>>(matrix: ExchangeMatrix, names: &[S]) -> Result<Self> {
        matrix.validate()?;
        if names.len() != matrix.rank + matrix.ncoeff() {
            return Err(Error::InvalidArgument("wrong number of variable names".into()));
        }
        let ctx = vars(names);
        let cluster = (0..matrix.rank).map(|i| LaurentPolynomial::var(ctx.clone(), i)).collect();
        Ok(Seed { matrix, cluster })
    }

    pub fn context(&self) -> &Vars {
        self.cluster[0].vars()
    }

    /// Exchange polynomial at `k` in the current cluster (and frozen) variables,
    /// context `[X1..Xn, y1..ym]` with abstract names.
    fn exchange_polynomial(&self, k: usize) -> LaurentPolynomial {
        let n = self.matrix.rank;
        let m = self.matrix.ncoeff();
        let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).chain((1..=m).map(|i| format!("Y{i}"))).collect();
        let ctx = vars(&names);
        let mut plus = vec![0i64; n + m];
        let mut minus = vec![0i64; n + m];
        for i in 0..n + m {
            let b = self.matrix.ext(i, k);
            plus[i] = b.max(0);
            minus[i] = (-b).max(0);
        }
        LaurentPolynomial::from_terms(ctx, [(plus, BigInt::from(1)), (minus, BigInt::from(1))])
    }

    /// Seed mutation at vertex `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.mutate_with_budget(k, None)
    }

    pub fn mutate_with_budget(&self, k: usize, budget: Option<&Budget>) -> Result<Self> {
        self.matrix.check_vertex(k)?;
        let k0 = k - 1;
        if let Some(b) = budget {
            b.check_exchange(self, k0)?;
        }
        let ex = self.exchange_polynomial(k0);
        let ctx = self.context().clone();
        let n = self.matrix.rank;
        let mut images = self.cluster.clone();
        for i in 0..self.matrix.ncoeff() {
            images.push(LaurentPolynomial::var(ctx.clone(), n + i));
        }
        let num = ex.substitute(&images)?;
        let new = num.div_exact(&self.cluster[k0]).map_err(|e| match e {
            Error::NotDivisible(msg) => Error::NotDivisible(format!("exchange at vertex {k}: {msg}")),
            other => other,
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k0] = new;
        Ok(Seed { matrix: self.matrix.mutate(k)?, cluster })
    }
}

/// Size limits for the oracle; exceeded limits abort before the expensive product.
#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    /// bound on the number of lattice points in the exponent box of an exchange monomial
    pub max_terms: f64,
    /// bound on log2 of the coefficient sum of an exchange monomial
    pub max_bits: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_terms: 4.0e6, max_bits: 2.0e5 }
    }
}

impl Budget {
    fn check_exchange(&self, seed: &Seed, k: usize) -> Result<()> {
        let n = seed.matrix.rank;
        let nv = seed.context().len();
        let bounds: Vec<Vec<(i64, i64)>> =
            seed.cluster.iter().map(|p| p.degree_bounds().unwrap_or_else(|| vec![(0, 0); nv])).collect();
        let log_sum: Vec<f64> = seed.cluster.iter().map(log2_abs_sum).collect();
        for sign in [1i64, -1] {
            let mut width = vec![0f64; nv];
            let mut bits = 0f64;
            for i in 0..n {
                let e = (sign * seed.matrix.b[i][k]).max(0) as f64;
                if e == 0.0 {
                    continue;
                }
                for (w, (lo, hi)) in width.iter_mut().zip(&bounds[i]) {
                    *w += e * (hi - lo) as f64;
                }
                bits += e * log_sum[i];
            }
            let terms: f64 = width.iter().map(|w| w + 1.0).product();
            if terms > self.max_terms || bits > self.max_bits {
                return Err(Error::ResourceLimit(format!(
                    "exchange at vertex {}: up to {terms:.3e} terms with coefficients up to 2^{bits:.0}",
                    k + 1
                )));
            }
        }
        Ok(())
    }
}

fn log2_abs_sum(p: &LaurentPolynomial) -> f64 {
    let s: BigInt = p.terms().iter().map(|(_, c)| c.abs()).sum();
    let bits = s.bits();
    if bits < 1000 {
        s.to_f64().unwrap_or(f64::MAX).log2()
    } else {
        bits as f64
    }
}

/// Applies `seq` (1-based vertices) to the initial seed.
pub fn oracle_expand(b: &ExchangeMatrix, seq: &[usize]) -> Result<Seed> {
    let mut seed = Seed::initial(b.clone())?;
    for &k in seq {
        seed = seed.mutate(k)?;
    }
    Ok(seed)
}

/// All seeds along `seq` starting from `start`, the start included.
pub fn oracle_walk(start: &Seed, seq: &[usize], budget: Option<&Budget>) -> Result<Vec<Seed>> {
    let mut out = vec![start.clone()];
    for &k in seq {
        let next = out.last().expect("nonempty").mutate_with_budget(k, budget)?;
        out.push(next);
    }
    Ok(out)
}

/// Whether the 3-cycle quiver with multiplicities (r, s, t) is mutation-acyclic.
/// Non-acyclic exactly when r, s, t >= 2 and r^2 + s^2 + t^2 - rst <= 4.
pub fn is_mutation_acyclic_rank3(r: i64, s: i64, t: i64) -> bool {
    let (r, s, t) = (r as i128, s as i128, t as i128);
    !(r >= 2 && s >= 2 && t >= 2 && r * r + s * s + t * t - r * s * t <= 4)
}

/// Arrow multiplicities after `n` alternating mutations 1, 2, 1, …:
/// `(c_{n+2} s - c_{n+1} t, c_{n+1} s - c_n t)`.
pub fn alternating_arrow_counts(r: i64, s: i64, t: i64, n: i64) -> Result<(i64, i64)> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n must be >= 1, got {n}")));
    }
    let bar_s = cheb(r, n + 2)? * s - cheb(r, n + 1)? * t;
    let bar_t = cheb(r, n + 1)? * s - cheb(r, n)? * t;
    Ok((bar_s, bar_t))
}

/// `min` over the terms of `F(y1, y2)` of `s·deg_y1 - t·deg_y2`, i.e. the exponent of `z`
/// in `F(z^s, z^-t)` computed in the tropical semifield.
pub fn tropical_min_eval(f: &LaurentPolynomial, s: i64, t: i64) -> Result<i64> {
    if f.nvars() != 2 {
        return Err(Error::InvalidArgument("tropical evaluation expects two variables".into()));
    }
    f.terms()
        .iter()
        .map(|(m, _)| s * m.0[0] - t * m.0[1])
        .min()
        .ok_or_else(|| Error::InvalidArgument("tropical evaluation of the zero polynomial".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle_of(m: &ExchangeMatrix) -> [i64; 6] {
        [m.arrows(1, 2), m.arrows(2, 1), m.arrows(2, 3), m.arrows(3, 2), m.arrows(3, 1), m.arrows(1, 3)]
    }

    #[test]
    fn section5_quivers() {
        let q0 = ExchangeMatrix::rank3_cycle(3, 7, 3);
        let q1p = q0.mutate(2).unwrap();
        // 2->1:3, 3->2:3, 1->3:2
        assert_eq!(cycle_of(&q1p), [0, 3, 0, 3, 0, 2]);
        let q1 = q1p.mutate(1).unwrap();
        assert_eq!(cycle_of(&q1), [3, 0, 3, 0, 2, 0]);
        assert_eq!(q1.mutate(1).unwrap(), q1p);
    }

    #[test]
    fn first_exchanges() {
        let s = oracle_expand(&ExchangeMatrix::rank2(3), &[1]).unwrap();
        assert_eq!(s.cluster[0], LaurentPolynomial::parse(s.context().clone(), "x1^-1*x2^3 + x1^-1").unwrap());
        let s = Seed::initial_with_names(ExchangeMatrix::rank3_cycle(2, 3, 4), &["x1", "x2", "z3"]).unwrap();
        let s = s.mutate(1).unwrap();
        assert_eq!(s.cluster[0], LaurentPolynomial::parse(s.context().clone(), "x1^-1*x2^2 + x1^-1*z3^3").unwrap());
    }

    #[test]
    fn x5_for_r3_has_denominator_x1_8_x2_3() {
        let s = oracle_expand(&ExchangeMatrix::rank2(3), &[1, 2, 1]).unwrap();
        let b = s.cluster[0].degree_bounds().unwrap();
        assert_eq!((b[0].0, b[1].0), (-8, -3));
        assert_eq!(s.cluster[0].coefficient_sum(), BigInt::from(365));
    }

    #[test]
    fn acyclicity_criterion() {
        assert!(!is_mutation_acyclic_rank3(2, 2, 2));
        assert!(!is_mutation_acyclic_rank3(3, 3, 7));
        assert!(!is_mutation_acyclic_rank3(3, 3, 3));
        assert!(!is_mutation_acyclic_rank3(3, 3, 4));
        assert!(is_mutation_acyclic_rank3(1, 5, 5));
        assert!(is_mutation_acyclic_rank3(2, 2, 3));
    }

    #[test]
    fn alternating_counts_match_iterated_mutation() {
        let (r, s, t) = (3, 7, 3);
        assert_eq!(alternating_arrow_counts(r, s, t, 1).unwrap(), (r * s - t, s));
        assert_eq!(alternating_arrow_counts(r, s, t, 2).unwrap(), ((r * r - 1) * s - r * t, r * s - t));
        let mut m = ExchangeMatrix::rank3_cycle(r, s, t);
        for n in 1..=8i64 {
            let (last, next) = if n % 2 == 1 { (1, 2) } else { (2, 1) };
            m = m.mutate(last).unwrap();
            let (bs, bt) = alternating_arrow_counts(r, s, t, n).unwrap();
            assert_eq!(m.b[2][next - 1].abs(), bs, "n={n}");
            assert_eq!(m.b[last - 1][2].abs(), bt, "n={n}");
        }
    }

    #[test]
    fn tropical() {
        let ctx = vars(&["y1", "y2"]);
        let one = LaurentPolynomial::one(ctx.clone());
        assert_eq!(tropical_min_eval(&one, 3, 4).unwrap(), 0);
        let f3 = LaurentPolynomial::parse(ctx, "y1 + 1").unwrap();
        assert_eq!(tropical_min_eval(&f3, 3, 5).unwrap(), 0);
    }

    #[test]
    fn budget_refuses_large_exchanges() {
        let b = Budget { max_terms: 10.0, max_bits: 1e9 };
        let s = Seed::initial(ExchangeMatrix::rank3_cycle(3, 3, 3)).unwrap();
        let walk = oracle_walk(&s, &[1, 2, 3, 1], Some(&b));
        assert!(matches!(walk, Err(Error::ResourceLimit(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = ExchangeMatrix> {
        prop_oneof![
            (1i64..4).prop_map(ExchangeMatrix::rank2),
            (-3i64..4, -3i64..4, -3i64..4).prop_map(|(a, b, c)| ExchangeMatrix::new(vec![
                vec![0, a, b],
                vec![-a, 0, c],
                vec![-b, -c, 0]
            ])
            .unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matrix_mutation_is_an_involution(m in arb_matrix(), seq in proptest::collection::vec(1usize..4, 0..8), principal in any::<bool>()) {
            let m = if principal { m.with_principal_coefficients() } else { m };
            let seq: Vec<usize> = seq.into_iter().map(|k| (k - 1) % m.rank + 1).collect();
            let mut cur = m.clone();
            for &k in &seq {
                cur = cur.mutate(k).unwrap();
                prop_assert_eq!(cur.mutate(k).unwrap().mutate(k).unwrap(), cur.clone());
            }
            let mut back = cur;
            for &k in seq.iter().rev() {
                back = back.mutate(k).unwrap();
            }
            prop_assert_eq!(back, m);
        }

        #[test]
        fn seed_mutation_is_an_involution(m in arb_matrix(), seq in proptest::collection::vec(1usize..4, 0..4), k in 1usize..4) {
            let seq: Vec<usize> = seq.into_iter().map(|k| (k - 1) % m.rank + 1).collect();
            let k = (k - 1) % m.rank + 1;
            let budget = Budget { max_terms: 2e4, max_bits: 400.0 };
            let start = Seed::initial(m).unwrap();
            if let Ok(walk) = oracle_walk(&start, &seq, Some(&budget)) {
                let s = walk.last().unwrap();
                if let Ok(t) = s.mutate_with_budget(k, Some(&budget)) {
                    prop_assert_eq!(&t.mutate(k).unwrap(), s);
                }
            }
        }

        #[test]
        fn laurent_phenomenon_on_non_acyclic_walks(
            which in 0usize..4,
            seq in proptest::collection::vec(1usize..3, 0..8),
        ) {
            let (r, s, t) = [(2, 2, 2), (3, 3, 3), (3, 3, 4), (3, 3, 7)][which];
            // no repeated consecutive vertex: encode each step as one of the two other vertices
            let mut walk = Vec::new();
            let mut last = 0usize;
            for step in seq {
                let next = (1..=3).filter(|&v| v != last).nth(step - 1).unwrap();
                walk.push(next);
                last = next;
            }
            let budget = Budget { max_terms: 2e4, max_bits: 600.0 };
            let start = Seed::initial(ExchangeMatrix::rank3_cycle(r, s, t)).unwrap();
            match oracle_walk(&start, &walk, Some(&budget)) {
                Ok(_) | Err(Error::ResourceLimit(_)) => {}
                Err(e) => prop_assert!(false, "walk {:?} failed: {}", walk, e),
            }
        }
    }
}
