//! Exact searches: maximum storage codes and minrank.
//!
//! The maximum storage code is a maximum independent set in an implicit
//! graph on all q^n words whose edges are the confusable pairs.
//! Confusability depends only on the difference of two words, so the
//! search fixes the zero word and branches over candidates in rank
//! order with the bound |current| + |candidates|.
//!
//! Minrank enumerates every matrix that fits the graph with unit
//! diagonal (row scaling makes this lossless) and keeps the minimum
//! Gaussian-elimination rank.

// Elimination sweeps index two rows of the same matrix at once.
#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use crate::alphabet::{field_inv, Alphabet, Space, Word};
use crate::confusion::Codebook;
use crate::error::{Error, Result};
use crate::graph::StorageGraph;
use crate::limits::Limits;

/// log_q of a set size; the dimension of a code of that size.
pub fn dimension(size: u64, q: u32) -> f64 {
    (size as f64).ln() / (f64::from(q)).ln()
}

/// Outcome of a maximum storage code search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub codebook: Codebook,
    pub size: u64,
    /// True when the search space was exhausted, so `size` is the true
    /// maximum; false when a budget stopped the search early.
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn dimension(&self) -> f64 {
        dimension(self.size, self.codebook.q())
    }
}

/// Bitset over word ranks marking the nonzero differences that make a
/// pair of words confusable: some coordinate nonzero while its whole
/// neighborhood is zero.
fn confusable_differences(graph: &StorageGraph, space: &Space) -> Vec<u64> {
    let mut bits = vec![0u64; (space.size() as usize).div_ceil(64)];
    let mut digits = vec![0u32; graph.n()];
    let q = space.q();
    for d in 1..space.size() {
        // Increment the digit word alongside the rank counter; the last
        // coordinate is the fastest digit.
        for i in (0..graph.n()).rev() {
            digits[i] += 1;
            if digits[i] == q {
                digits[i] = 0;
            } else {
                break;
            }
        }
        let confusable = (0..graph.n())
            .any(|i| digits[i] != 0 && graph.neighbors(i).iter().all(|&j| digits[j] == 0));
        if confusable {
            bits[(d / 64) as usize] |= 1 << (d % 64);
        }
    }
    bits
}

#[inline]
fn bit(bits: &[u64], idx: u64) -> bool {
    bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
}

/// Finds a maximum storage code on `graph` over an alphabet of size `q`
/// by branch-and-bound, fixing the zero word (every maximum code
/// translates to one containing it). Deterministic: candidates are
/// explored in rank order, and the returned codebook is the first
/// maximum found.
///
/// Requires q^n ≤ `limits.max_space`. When the time budget (or an
/// internal candidate-memory cap of 16·max_space words) is exceeded the
/// best code found so far is returned with `exact = false`.
pub fn rdss_exact(graph: &StorageGraph, q: u32, limits: &Limits) -> Result<SearchResult> {
    let alphabet = Alphabet::new(q)?;
    let space = Space::new(q, graph.n())?;
    limits.check_space(space.size() as u128)?;
    let start = Instant::now();
    let deadline = start + limits.time_budget;
    let mem_cap = (limits.max_space as usize).saturating_mul(16);

    let in_s = confusable_differences(graph, &space);

    struct Frame {
        cand: Vec<u64>,
        idx: usize,
    }
    let root: Vec<u64> = (1..space.size()).filter(|&v| !bit(&in_s, v)).collect();
    let mut live_words = root.len();
    let mut stack = vec![Frame { cand: root, idx: 0 }];
    let mut current: Vec<u64> = vec![0];
    let mut best: Vec<u64> = current.clone();
    let mut nodes: u64 = 1;
    let mut truncated = false;

    while let Some(frame) = stack.last_mut() {
        let remaining = frame.cand.len() - frame.idx;
        if remaining == 0 || current.len() + remaining <= best.len() || truncated {
            live_words -= frame.cand.len();
            stack.pop();
            if stack.is_empty() {
                break;
            }
            current.pop();
            continue;
        }
        let v = frame.cand[frame.idx];
        frame.idx += 1;
        nodes += 1;
        if Instant::now() > deadline {
            truncated = true;
            continue;
        }
        let child: Vec<u64> = frame.cand[frame.idx..]
            .iter()
            .copied()
            .filter(|&u| !bit(&in_s, space.sub(u, v)))
            .collect();
        current.push(v);
        if current.len() > best.len() {
            best = current.clone();
        }
        live_words += child.len();
        if live_words > mem_cap {
            truncated = true;
            live_words -= child.len();
            current.pop();
            continue;
        }
        stack.push(Frame {
            cand: child,
            idx: 0,
        });
    }

    let codebook = Codebook::from_ranks(&space, best.iter().copied())?;
    debug_assert!(crate::confusion::is_rdss(&codebook, graph)?);
    let _ = alphabet;
    Ok(SearchResult {
        size: best.len() as u64,
        codebook,
        exact: !truncated,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Square matrix over a prime field whose support fits a storage graph:
/// nonzero diagonal, off-diagonal entries only on edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingMatrix {
    graph: StorageGraph,
    q: u32,
    rows: Vec<Vec<u32>>,
}

impl FittingMatrix {
    pub fn new(graph: StorageGraph, q: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        Alphabet::new(q)?.require_prime()?;
        let n = graph.n();
        if rows.len() != n {
            return Err(Error::NotFitting {
                reason: format!("expected {} rows, got {}", n, rows.len()),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotFitting {
                    reason: format!("row {} has length {}, expected {}", i + 1, row.len(), n),
                });
            }
            for (j, &a) in row.iter().enumerate() {
                if a >= q {
                    return Err(Error::SymbolOutOfRange { symbol: a, q });
                }
                if i == j && a == 0 {
                    return Err(Error::NotFitting {
                        reason: format!("diagonal entry {} is zero", i + 1),
                    });
                }
                if i != j && a != 0 && !graph.has_edge(i, j) {
                    return Err(Error::NotFitting {
                        reason: format!(
                            "entry ({},{}) is nonzero but {} is not a neighbor of {}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        ),
                    });
                }
            }
        }
        Ok(FittingMatrix { graph, q, rows })
    }

    pub fn graph(&self) -> &StorageGraph {
        &self.graph
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn rank(&self) -> u32 {
        rank_gf(&self.rows, self.q).expect("entries validated at construction")
    }

    /// One row per line, entries space-separated.
    pub fn to_display_string(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Rank of a matrix over F_q (q prime) by Gaussian elimination. Rows
/// may be empty or non-square.
pub fn rank_gf(rows: &[Vec<u32>], q: u32) -> Result<u32> {
    Alphabet::new(q)?.require_prime()?;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&a| {
                    if a >= q {
                        Err(Error::SymbolOutOfRange { symbol: a, q })
                    } else {
                        Ok(a as u64)
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let q64 = q as u64;
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::LengthMismatch {
            left: m.iter().map(|r| r.len()).max().unwrap_or(0),
            right: cols,
        });
    }
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field_inv(m[rank][col] as u32, q)? as u64;
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let factor = m[r][col] * inv % q64;
                for c in col..cols {
                    m[r][c] = (m[r][c] + (q64 - factor) * m[rank][c]) % q64;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Ok(rank as u32)
}

/// Result of the exhaustive minrank enumeration.
#[derive(Debug, Clone)]
pub struct MinrankResult {
    pub rank: u32,
    pub witness: FittingMatrix,
}

/// Minimum rank over F_q of any matrix fitting `graph`, by enumerating
/// all q^|E| unit-diagonal fitting matrices (edge entries vary in
/// row-major order, values ascending; the witness is the first matrix
/// achieving the minimum). Requires q prime and q^|E| ≤ max_space.
pub fn minrank(graph: &StorageGraph, q: u32, limits: &Limits) -> Result<MinrankResult> {
    Alphabet::new(q)?.require_prime()?;
    let n = graph.n();
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let total = (q as u128)
        .checked_pow(edges.len() as u32)
        .ok_or(Error::SpaceExceeded {
            needed: u128::MAX,
            max_space: limits.max_space,
        })?;
    limits.check_space(total)?;
    let deadline = Instant::now() + limits.time_budget;

    let mut entries = vec![0u32; edges.len()];
    let mut best_rank = u32::MAX;
    let mut best_entries: Vec<u32> = entries.clone();
    let mut counter: u128 = 0;
    loop {
        if counter.is_multiple_of(1024) && Instant::now() > deadline {
            return Err(Error::TimeBudgetExceeded);
        }
        counter += 1;
        let mut rows = vec![vec![0u32; n]; n];
        for i in 0..n {
            rows[i][i] = 1;
        }
        for (slot, &(i, j)) in edges.iter().enumerate() {
            rows[i][j] = entries[slot];
        }
        let rank = rank_gf(&rows, q)?;
        if rank < best_rank {
            best_rank = rank;
            best_entries = entries.clone();
            if best_rank == 1 {
                break;
            }
        }
        // Advance the odometer: last slot fastest, so assignments come
        // in lexicographic order.
        let mut slot = edges.len();
        loop {
            if slot == 0 {
                break;
            }
            slot -= 1;
            entries[slot] += 1;
            if entries[slot] == q {
                entries[slot] = 0;
            } else {
                break;
            }
        }
        if entries.iter().all(|&e| e == 0) {
            break;
        }
    }

    let mut rows = vec![vec![0u32; n]; n];
    for i in 0..n {
        rows[i][i] = 1;
    }
    for (slot, &(i, j)) in edges.iter().enumerate() {
        rows[i][j] = best_entries[slot];
    }
    Ok(MinrankResult {
        rank: best_rank,
        witness: FittingMatrix::new(graph.clone(), q, rows)?,
    })
}

/// The full right nullspace {x : A·x = 0} as a codebook of size
/// q^{n − rank(A)}. Row i of a fitting matrix reads
/// a_ii·x_i + Σ_{j∈N(i)} a_ij·x_j = 0, so every kernel word determines
/// each coordinate linearly from its neighborhood: the result is always
/// a valid storage code on the fitted graph.
pub fn nullspace_code(a: &FittingMatrix) -> Result<Codebook> {
    let q = a.q() as u64;
    let n = a.n();
    // Reduced row echelon form.
    let mut m: Vec<Vec<u64>> = a
        .rows()
        .iter()
        .map(|row| row.iter().map(|&v| v as u64).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field_inv(m[rank][col] as u32, a.q())? as u64;
        for c in col..n {
            m[rank][c] = m[rank][c] * inv % q;
        }
        for r in 0..n {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..n {
                    m[r][c] = (m[r][c] + (q - factor) * m[rank][c] % q) % q;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let count = q
        .checked_pow(free.len() as u32)
        .ok_or(Error::SpaceExceeded {
            needed: u128::MAX,
            max_space: u64::MAX,
        })?;

    let mut words: Vec<Word> = Vec::with_capacity(count as usize);
    let mut assign = vec![0u32; free.len()];
    loop {
        let mut x = vec![0u32; n];
        for (k, &c) in free.iter().enumerate() {
            x[c] = assign[k];
        }
        for (r, &p) in pivots.iter().enumerate() {
            // x_p = −Σ_{free c} m[r][c]·x_c with unit pivot.
            let mut acc = 0u64;
            for &c in &free {
                acc = (acc + m[r][c] * x[c] as u64) % q;
            }
            x[p] = ((q - acc) % q) as u32;
        }
        words.push(Word::new(x));
        // Next free-variable assignment, last digit fastest.
        let mut k = free.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            assign[k] += 1;
            if assign[k] == a.q() {
                assign[k] = 0;
            } else {
                break;
            }
        }
        if assign.iter().all(|&v| v == 0) {
            break;
        }
    }
    Codebook::new(words, Alphabet::new(a.q())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_word;
    use crate::confusion::{confusable, is_rdss};
    use crate::graph::{complete_graph, cycle_graph, empty_graph, fig1_graph};
    use crate::rng::SplitMix64;
    use crate::testkit::{pentagon_code, pentagon_graph};

    /// Maximum non-confusable set by a different algorithm: explicit
    /// include/exclude recursion over compatibility masks, no zero-word
    /// fixing, confusability from the pairwise predicate rather than
    /// difference membership. Only for q^n ≤ 64.
    fn oracle_max_code(graph: &StorageGraph, q: u32) -> u32 {
        let space = Space::new(q, graph.n()).unwrap();
        let size = space.size() as usize;
        assert!(size <= 64);
        let words: Vec<Word> = (0..size as u64).map(|r| space.word(r).unwrap()).collect();
        let mut compat = vec![0u64; size];
        for a in 0..size {
            for b in 0..size {
                if a != b && !confusable(&words[a], &words[b], graph).unwrap() {
                    compat[a] |= 1 << b;
                }
            }
        }
        fn go(compat: &[u64], cand: u64, cur: u32, best: &mut u32) {
            if cur + cand.count_ones() <= *best {
                return;
            }
            if cand == 0 {
                *best = (*best).max(cur);
                return;
            }
            let v = cand.trailing_zeros() as usize;
            go(compat, cand & compat[v], cur + 1, best);
            go(compat, cand & !(1u64 << v), cur, best);
        }
        let mut best = 0;
        go(
            &compat,
            if size == 64 {
                u64::MAX
            } else {
                (1 << size) - 1
            },
            0,
            &mut best,
        );
        best
    }

    /// Rank as the largest k with a k×k submatrix of nonzero
    /// determinant, determinants by Laplace expansion.
    fn oracle_rank_minors(rows: &[Vec<u32>], q: u32) -> u32 {
        fn det(rows: &[Vec<u32>], rs: &[usize], cs: &[usize], q: u64) -> u64 {
            if rs.is_empty() {
                return 1;
            }
            let mut acc = 0u64;
            for (k, &c) in cs.iter().enumerate() {
                let minor_cs: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
                let sub = det(rows, &rs[1..], &minor_cs, q);
                let term = rows[rs[0]][c] as u64 * sub % q;
                acc = if k % 2 == 0 {
                    (acc + term) % q
                } else {
                    (acc + q - term) % q
                };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn go(
                start: usize,
                n: usize,
                k: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    go(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            go(0, n, k, &mut cur, &mut out);
            out
        }
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        for k in (1..=nr.min(nc)).rev() {
            for rs in subsets(nr, k) {
                for cs in subsets(nc, k) {
                    if det(rows, &rs, &cs, q as u64) != 0 {
                        return k as u32;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rdss_exact_pentagon() {
        let res = rdss_exact(&pentagon_graph(), 2, &Limits::default()).unwrap();
        assert_eq!(res.size, 5);
        assert!(res.exact);
        assert!(is_rdss(&res.codebook, &pentagon_graph()).unwrap());
        assert!(res.codebook.contains(&Word::zero(5)));
        assert!((res.dimension() - 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn rdss_exact_trivial_graphs() {
        let res = rdss_exact(&empty_graph(3).unwrap(), 2, &Limits::default()).unwrap();
        assert_eq!(res.size, 1);
        assert_eq!(res.dimension(), 0.0);

        let res = rdss_exact(&complete_graph(3).unwrap(), 2, &Limits::default()).unwrap();
        assert_eq!(res.size, 4);
        // Lex-first maximum: the even-weight code.
        let even: Vec<Word> = ["000", "011", "101", "110"]
            .iter()
            .map(|t| parse_word(t, 2).unwrap())
            .collect();
        assert_eq!(res.codebook.words(), &even[..]);
    }

    #[test]
    fn rdss_exact_matches_independent_oracle() {
        let mut rng = SplitMix64::new(5);
        let mut cases: Vec<(StorageGraph, u32)> = vec![
            (pentagon_graph(), 2),
            (complete_graph(3).unwrap(), 2),
            (empty_graph(3).unwrap(), 2),
            (fig1_graph(), 2),
            (complete_graph(2).unwrap(), 3),
            (cycle_graph(3).unwrap(), 3),
        ];
        for _ in 0..12 {
            let n = 2 + rng.below(3) as usize;
            let adj = (0..n)
                .map(|i| (0..n).filter(|&j| j != i && rng.coin()).collect())
                .collect();
            cases.push((StorageGraph::new(n, adj).unwrap(), 2));
        }
        for (g, q) in cases {
            let res = rdss_exact(&g, q, &Limits::default()).unwrap();
            assert!(res.exact);
            assert_eq!(res.size as u32, oracle_max_code(&g, q), "graph {:?}", g);
            assert!(is_rdss(&res.codebook, &g).unwrap());
        }
    }

    #[test]
    fn rdss_exact_respects_space_limit() {
        let limits = Limits::default().with_max_space(16);
        assert!(matches!(
            rdss_exact(&pentagon_graph(), 2, &limits),
            Err(Error::SpaceExceeded { needed: 32, .. })
        ));
    }

    #[test]
    fn rdss_exact_zero_budget_returns_inexact() {
        let limits = Limits::default().with_time_budget(Duration::ZERO);
        let res = rdss_exact(&pentagon_graph(), 2, &limits).unwrap();
        assert!(!res.exact);
        assert!(res.size >= 1);
        assert!(is_rdss(&res.codebook, &pentagon_graph()).unwrap());
    }

    #[test]
    fn minrank_trivial_graphs() {
        let res = minrank(&empty_graph(2).unwrap(), 2, &Limits::default()).unwrap();
        assert_eq!(res.rank, 2);
        assert_eq!(res.witness.rows(), &[vec![1, 0], vec![0, 1]]);

        let res = minrank(&complete_graph(3).unwrap(), 2, &Limits::default()).unwrap();
        assert_eq!(res.rank, 1);
        assert_eq!(
            res.witness.rows(),
            &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn minrank_enumeration_order_q3() {
        // Edge slots (1,2),(2,1); the first rank-1 assignment is (1,1).
        let res = minrank(&complete_graph(2).unwrap(), 3, &Limits::default()).unwrap();
        assert_eq!(res.rank, 1);
        assert_eq!(res.witness.rows(), &[vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn minrank_pentagon() {
        let res = minrank(&pentagon_graph(), 2, &Limits::default()).unwrap();
        assert_eq!(res.rank, 3);
        assert_eq!(res.witness.rank(), 3);
        let kernel = nullspace_code(&res.witness).unwrap();
        assert_eq!(kernel.len(), 4);
        assert!(is_rdss(&kernel, &pentagon_graph()).unwrap());
        // Strictness: the maximum code beats every linear one.
        assert!(dimension(5, 2) > 5.0 - 3.0);
    }

    #[test]
    fn minrank_errors() {
        assert!(matches!(
            minrank(&pentagon_graph(), 4, &Limits::default()),
            Err(Error::NotPrime { q: 4 })
        ));
        let limits = Limits::default().with_max_space(512);
        assert!(matches!(
            minrank(&pentagon_graph(), 2, &limits),
            Err(Error::SpaceExceeded { needed: 1024, .. })
        ));
        let limits = Limits::default().with_time_budget(Duration::ZERO);
        assert!(matches!(
            minrank(&pentagon_graph(), 2, &limits),
            Err(Error::TimeBudgetExceeded)
        ));
    }

    #[test]
    fn rank_gf_examples() {
        let identity: Vec<Vec<u32>> = (0..4)
            .map(|i| (0..4).map(|j| u32::from(i == j)).collect())
            .collect();
        assert_eq!(rank_gf(&identity, 5).unwrap(), 4);
        let ones = vec![vec![1u32; 3]; 3];
        assert_eq!(rank_gf(&ones, 2).unwrap(), 1);
        assert_eq!(rank_gf(&[], 2).unwrap(), 0);
        assert!(matches!(rank_gf(&ones, 6), Err(Error::NotPrime { q: 6 })));
    }

    #[test]
    fn rank_gf_fig1_all_ones_support() {
        // Unit diagonal, 1 on every edge of the 5-vertex example graph.
        let g = fig1_graph();
        let rows: Vec<Vec<u32>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| u32::from(i == j || g.has_edge(i, j)))
                    .collect()
            })
            .collect();
        assert_eq!(rank_gf(&rows, 2).unwrap(), 5);
        assert_eq!(oracle_rank_minors(&rows, 2), 5);
    }

    #[test]
    fn rank_gf_matches_minor_oracle() {
        let mut rng = SplitMix64::new(11);
        for &q in &[2u32, 3, 5] {
            for _ in 0..40 {
                let nr = 1 + rng.below(4) as usize;
                let nc = 1 + rng.below(4) as usize;
                let rows: Vec<Vec<u32>> = (0..nr)
                    .map(|_| (0..nc).map(|_| rng.below(q as u64) as u32).collect())
                    .collect();
                assert_eq!(
                    rank_gf(&rows, q).unwrap(),
                    oracle_rank_minors(&rows, q),
                    "q={q} rows={rows:?}"
                );
            }
        }
    }

    fn random_fitting(graph: &StorageGraph, q: u32, rng: &mut SplitMix64) -> FittingMatrix {
        let n = graph.n();
        let mut rows = vec![vec![0u32; n]; n];
        for i in 0..n {
            rows[i][i] = 1 + rng.below(q as u64 - 1) as u32;
            for &j in graph.neighbors(i) {
                rows[i][j] = rng.below(q as u64) as u32;
            }
        }
        FittingMatrix::new(graph.clone(), q, rows).unwrap()
    }

    #[test]
    fn row_scaling_preserves_rank() {
        let mut rng = SplitMix64::new(17);
        for &q in &[3u32, 5] {
            for _ in 0..25 {
                let a = random_fitting(&pentagon_graph(), q, &mut rng);
                let scaled: Vec<Vec<u32>> = a
                    .rows()
                    .iter()
                    .map(|row| {
                        let lambda = 1 + rng.below(q as u64 - 1);
                        row.iter()
                            .map(|&v| (v as u64 * lambda % q as u64) as u32)
                            .collect()
                    })
                    .collect();
                assert_eq!(rank_gf(a.rows(), q).unwrap(), rank_gf(&scaled, q).unwrap());
            }
        }
    }

    #[test]
    fn fitting_matrix_validation() {
        let g = pentagon_graph();
        let mut rows = vec![vec![0u32; 5]; 5];
        for i in 0..5 {
            rows[i][i] = 1;
        }
        assert!(FittingMatrix::new(g.clone(), 2, rows.clone()).is_ok());
        rows[2][2] = 0;
        assert!(matches!(
            FittingMatrix::new(g.clone(), 2, rows.clone()),
            Err(Error::NotFitting { .. })
        ));
        rows[2][2] = 1;
        rows[0][2] = 1;
        assert!(matches!(
            FittingMatrix::new(g.clone(), 2, rows.clone()),
            Err(Error::NotFitting { .. })
        ));
        rows[0][2] = 0;
        rows[0][1] = 3;
        assert!(matches!(
            FittingMatrix::new(g, 2, rows),
            Err(Error::SymbolOutOfRange { symbol: 3, q: 2 })
        ));
    }

    #[test]
    fn nullspace_examples() {
        let g = empty_graph(3).unwrap();
        let identity: Vec<Vec<u32>> = (0..3)
            .map(|i| (0..3).map(|j| u32::from(i == j)).collect())
            .collect();
        let a = FittingMatrix::new(g, 2, identity).unwrap();
        let kernel = nullspace_code(&a).unwrap();
        assert_eq!(kernel.words(), &[Word::zero(3)]);

        let g = complete_graph(3).unwrap();
        let a = FittingMatrix::new(g.clone(), 2, vec![vec![1; 3]; 3]).unwrap();
        let kernel = nullspace_code(&a).unwrap();
        let even: Vec<Word> = ["000", "011", "101", "110"]
            .iter()
            .map(|t| parse_word(t, 2).unwrap())
            .collect();
        assert_eq!(kernel.words(), &even[..]);
        assert!(is_rdss(&kernel, &g).unwrap());
    }

    #[test]
    fn nullspace_is_always_a_storage_code() {
        let mut rng = SplitMix64::new(23);
        for &q in &[2u32, 3] {
            for _ in 0..30 {
                let n = 2 + rng.below(3) as usize;
                let adj = (0..n)
                    .map(|i| (0..n).filter(|&j| j != i && rng.coin()).collect())
                    .collect();
                let g = StorageGraph::new(n, adj).unwrap();
                let a = random_fitting(&g, q, &mut rng);
                let kernel = nullspace_code(&a).unwrap();
                assert_eq!(kernel.len() as u64, (q as u64).pow(n as u32 - a.rank()));
                assert!(is_rdss(&kernel, &g).unwrap(), "A={a:?}");
                // Every kernel word solves A·x = 0.
                for w in kernel.words() {
                    for row in a.rows() {
                        let dot: u64 = row
                            .iter()
                            .zip(w.symbols())
                            .map(|(&r, &x)| r as u64 * x as u64)
                            .sum();
                        assert_eq!(dot % q as u64, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn linear_bound_on_three_vertex_graphs() {
        // log_q(maximum size) ≥ n − minrank on all 64 directed graphs
        // with 3 vertices.
        for mask in 0u32..64 {
            let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            let mut adj = vec![vec![]; 3];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    adj[i].push(j);
                }
            }
            let g = StorageGraph::new(3, adj).unwrap();
            let res = rdss_exact(&g, 2, &Limits::default()).unwrap();
            let mr = minrank(&g, 2, &Limits::default()).unwrap();
            assert!(
                dimension(res.size, 2) >= (3 - mr.rank) as f64 - 1e-9,
                "mask={mask}"
            );
            let kernel = nullspace_code(&mr.witness).unwrap();
            assert_eq!(kernel.len() as u64, 1u64 << (3 - mr.rank));
            assert!(is_rdss(&kernel, &g).unwrap());
        }
    }

    #[test]
    fn pentagon_code_is_maximum() {
        let res = rdss_exact(&pentagon_graph(), 2, &Limits::default()).unwrap();
        assert_eq!(res.size as usize, pentagon_code().len());
    }
}
