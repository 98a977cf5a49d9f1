//! Both directions between storage codes and index codes, and the
//! sandwich report tying them together.
//!
//! From a storage code to an index code: cover the word space by
//! translates of the code and broadcast the class index; each receiver
//! undoes the class shift, looks up its neighborhood projection in the
//! base recovery table, and re-applies the shift. From an index code to
//! a storage code: the largest fiber of the encoding is non-confusable,
//! because two confusable words with equal broadcast would leave some
//! receiver unable to decode.
//!
//! The report brackets the optimal index code length ℓ between
//! n − dim(C) (no shorter broadcast can split the space into
//! non-confusable classes) and n − dim(C) + log_q(min{n ln q,
//! 1 + dim ln q}) (the covering construction), and checks the linear
//! route dim ≥ n − minrank through the minrank witness nullspace.

use crate::alphabet::{format_word, project, word_sub, Alphabet, Space, Word};
use crate::confusion::{first_confusable_pair, recovery_table, Codebook, RecoveryTable};
use crate::covering::{
    cover_valid, greedy_cover, random_cover, CoverVariant, TranslateCover, WordSet,
};
use crate::error::{Error, Result};
use crate::graph::StorageGraph;
use crate::limits::Limits;
use crate::search::{minrank, nullspace_code, rdss_exact, FittingMatrix};

/// Smallest ℓ with base^ℓ ≥ m.
pub fn ceil_log(base: u64, m: u64) -> u32 {
    let mut pow: u128 = 1;
    let mut l = 0;
    while pow < m as u128 {
        pow *= base as u128;
        l += 1;
    }
    l
}

/// How to build the translate cover behind an index code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMethod {
    Greedy,
    Hybrid,
    Random { seed: u64, m: u64 },
}

/// A class-index broadcast scheme: encode a word as the first translate
/// class containing it, decode per receiver through the base code's
/// recovery table.
#[derive(Debug, Clone)]
pub struct IndexCodeSpec {
    graph: StorageGraph,
    cover: TranslateCover,
    recovery: RecoveryTable,
    base_set: WordSet,
    length_symbols: u32,
}

impl IndexCodeSpec {
    /// Wraps a cover as an index code on `graph`. The base must be a
    /// valid storage code; the cover need not be complete (an
    /// incomplete one simply fails verification and makes some words
    /// unencodable).
    pub fn new(graph: &StorageGraph, cover: TranslateCover) -> Result<Self> {
        if let Some((x, y, vertex)) = first_confusable_pair(cover.base(), graph)? {
            let q = cover.base().q();
            return Err(Error::NotRdss {
                reason: format!(
                    "words {} and {} are confusable at vertex {}",
                    format_word(&x, q),
                    format_word(&y, q),
                    vertex + 1
                ),
            });
        }
        let recovery = recovery_table(cover.base(), graph)?;
        let base_set = WordSet::from_codebook(cover.base())?;
        let length_symbols = ceil_log(cover.base().q() as u64, cover.m());
        Ok(IndexCodeSpec {
            graph: graph.clone(),
            cover,
            recovery,
            base_set,
            length_symbols,
        })
    }

    pub fn graph(&self) -> &StorageGraph {
        &self.graph
    }

    pub fn base(&self) -> &Codebook {
        self.cover.base()
    }

    pub fn cover(&self) -> &TranslateCover {
        &self.cover
    }

    pub fn m(&self) -> u64 {
        self.cover.m()
    }

    /// Broadcast length in q-ary symbols: ⌈log_q m⌉.
    pub fn length_symbols(&self) -> u32 {
        self.length_symbols
    }
}

/// Builds an index code from a storage code by covering the word space
/// with translates of it.
pub fn index_from_rdss(
    code: &Codebook,
    graph: &StorageGraph,
    method: IndexMethod,
    limits: &Limits,
) -> Result<IndexCodeSpec> {
    if let Some((x, y, vertex)) = first_confusable_pair(code, graph)? {
        let q = code.q();
        return Err(Error::NotRdss {
            reason: format!(
                "words {} and {} are confusable at vertex {}",
                format_word(&x, q),
                format_word(&y, q),
                vertex + 1
            ),
        });
    }
    let cover = match method {
        IndexMethod::Greedy => greedy_cover(code, CoverVariant::Full, limits)?,
        IndexMethod::Hybrid => greedy_cover(code, CoverVariant::Hybrid, limits)?,
        IndexMethod::Random { seed, m } => {
            let cv = random_cover(code, m, seed, limits)?;
            if !cv.is_complete() {
                return Err(Error::IncompleteCover {
                    uncovered: cv.uncovered_count(),
                });
            }
            cv
        }
    };
    IndexCodeSpec::new(graph, cover)
}

/// The class index broadcast for `y`: the smallest i with
/// y − x_i ∈ base.
pub fn encode_index(spec: &IndexCodeSpec, y: &Word) -> Result<u64> {
    let space = spec.base_set.space();
    let yr = space.rank(y)?;
    for (i, x) in spec.cover.translates().iter().enumerate() {
        if spec.base_set.contains(space.sub(yr, space.rank(x)?)) {
            return Ok(i as u64);
        }
    }
    Err(Error::IncompleteCover {
        uncovered: spec.cover.uncovered_count().max(1),
    })
}

/// Receiver `j`'s decoder: shift the side information back by
/// translate i, look the projection up in the base table, shift the
/// answer forward again.
pub fn decode_index(spec: &IndexCodeSpec, i: u64, j: usize, side: &Word) -> Result<u32> {
    let translates = spec.cover.translates();
    if i >= translates.len() as u64 {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: translates.len() as u64,
        });
    }
    if j >= spec.graph.n() {
        return Err(Error::IndexOutOfRange {
            index: j as u64,
            bound: spec.graph.n() as u64,
        });
    }
    let q = spec.base().q();
    let x = &translates[i as usize];
    let offset = project(x, spec.graph.neighbors(j))?;
    let shifted = word_sub(side, &offset, q)?;
    let sym = spec
        .recovery
        .lookup(j, &shifted)
        .ok_or_else(|| Error::UnknownProjection {
            projection: format_word(&shifted, q),
            vertex: j + 1,
        })?;
    Ok((sym + x.symbol(j)) % q)
}

/// Outcome of exhaustively checking an index code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexVerification {
    pub valid: bool,
    /// A word and receiver where decoding failed or mismatched.
    pub failure: Option<(Word, usize)>,
}

/// Checks decode(encode(y), j, y|N(j)) = y_j for every word and every
/// receiver.
pub fn verify_index_code(spec: &IndexCodeSpec, limits: &Limits) -> Result<IndexVerification> {
    let space = Space::new(spec.base().q(), spec.graph.n())?;
    limits.check_space(space.size() as u128)?;
    for r in 0..space.size() {
        let y = space.word(r)?;
        let class = match encode_index(spec, &y) {
            Ok(c) => c,
            Err(_) => {
                return Ok(IndexVerification {
                    valid: false,
                    failure: Some((y, 0)),
                })
            }
        };
        for j in 0..spec.graph.n() {
            let side = project(&y, spec.graph.neighbors(j))?;
            match decode_index(spec, class, j, &side) {
                Ok(sym) if sym == y.symbol(j) => {}
                _ => {
                    return Ok(IndexVerification {
                        valid: false,
                        failure: Some((y, j)),
                    })
                }
            }
        }
    }
    Ok(IndexVerification {
        valid: true,
        failure: None,
    })
}

/// Largest fiber of an arbitrary total encoding, with the result of
/// re-checking it as a storage code.
#[derive(Debug, Clone)]
pub struct FiberExtraction {
    pub codebook: Codebook,
    /// Encoding value whose fiber was taken (smallest on size ties).
    pub class: u64,
    /// Whether the fiber passes the storage-code check; false means the
    /// supplied encoding was not a valid index code for the graph.
    pub valid: bool,
}

/// Extracts a storage code from any total encoding of F_q^n: some value
/// is taken by at least q^n/(number of values) words, and a decodable
/// constant-broadcast class can hold no confusable pair.
pub fn rdss_from_index<F>(
    mut encoding: F,
    graph: &StorageGraph,
    q: u32,
    limits: &Limits,
) -> Result<FiberExtraction>
where
    F: FnMut(&Word) -> u64,
{
    let space = Space::new(q, graph.n())?;
    limits.check_space(space.size() as u128)?;
    let mut fibers: std::collections::BTreeMap<u64, Vec<u64>> = std::collections::BTreeMap::new();
    for r in 0..space.size() {
        let w = space.word(r)?;
        fibers.entry(encoding(&w)).or_default().push(r);
    }
    let mut best: Option<(u64, &Vec<u64>)> = None;
    for (&value, ranks) in &fibers {
        if best.is_none_or(|(_, b)| ranks.len() > b.len()) {
            best = Some((value, ranks));
        }
    }
    let (class, ranks) = best.expect("space is nonempty");
    let codebook = Codebook::from_ranks(&space, ranks.iter().copied())?;
    let valid = crate::confusion::is_rdss(&codebook, graph)?;
    Ok(FiberExtraction {
        codebook,
        class,
        valid,
    })
}

/// A linear index code read off a fitting matrix: broadcast the basis
/// rows' inner products with the input; every other row is a recorded
/// combination of the basis, so each receiver can reconstruct its own
/// row's product and solve for its coordinate.
#[derive(Debug, Clone)]
pub struct LinearIndexCodeSpec {
    matrix: FittingMatrix,
    basis_rows: Vec<usize>,
    lambda: Vec<Vec<u32>>,
}

impl LinearIndexCodeSpec {
    pub fn matrix(&self) -> &FittingMatrix {
        &self.matrix
    }

    /// Indices of the broadcast rows, in row order.
    pub fn basis_rows(&self) -> &[usize] {
        &self.basis_rows
    }

    /// Expansion of row i over the basis rows.
    pub fn lambda(&self, i: usize) -> &[u32] {
        &self.lambda[i]
    }

    /// Broadcast length in symbols: rank of the matrix.
    pub fn length_symbols(&self) -> u32 {
        self.basis_rows.len() as u32
    }
}

fn row_dot(row: &[u32], y: &Word, q: u32) -> u32 {
    let acc: u64 = row
        .iter()
        .zip(y.symbols())
        .map(|(&a, &x)| a as u64 * x as u64 % q as u64)
        .sum();
    (acc % q as u64) as u32
}

/// Builds the linear scheme from a fitting matrix: basis = first
/// rank(A) independent rows, coefficients by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn linear_index_from_fitting(a: &FittingMatrix) -> Result<LinearIndexCodeSpec> {
    let q = a.q() as u64;
    let n = a.n();
    // Select basis rows greedily in row order, keeping an echelon form
    // of the selected rows with bookkeeping of pivot columns.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot col, reduced row)
    for i in 0..n {
        let mut row: Vec<u64> = a.rows()[i].iter().map(|&v| v as u64).collect();
        for &(pc, ref er) in &echelon {
            if row[pc] != 0 {
                let factor = row[pc];
                for c in 0..n {
                    row[c] = (row[c] + (q - factor) * er[c]) % q;
                }
            }
        }
        if let Some(pc) = (0..n).find(|&c| row[c] != 0) {
            let inv = crate::alphabet::field_inv(row[pc] as u32, a.q())? as u64;
            for c in 0..n {
                row[c] = row[c] * inv % q;
            }
            echelon.push((pc, row));
            basis_rows.push(i);
        }
    }
    // Express every row over the basis: solve Bᵀ·λ = rowᵀ, which is
    // consistent by construction and unique because B has full row
    // rank.
    let k = basis_rows.len();
    let mut lambda = Vec::with_capacity(n);
    for i in 0..n {
        // Augmented system: columns are basis rows, target is row i.
        let mut sys: Vec<Vec<u64>> = (0..n)
            .map(|c| {
                let mut eq: Vec<u64> = basis_rows.iter().map(|&r| a.rows()[r][c] as u64).collect();
                eq.push(a.rows()[i][c] as u64);
                eq
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (eq row, var col)
        let mut rank = 0usize;
        for col in 0..k {
            let Some(p) = (rank..n).find(|&r| sys[r][col] != 0) else {
                continue;
            };
            sys.swap(rank, p);
            let inv = crate::alphabet::field_inv(sys[rank][col] as u32, a.q())? as u64;
            for c in col..=k {
                sys[rank][c] = sys[rank][c] * inv % q;
            }
            for r in 0..n {
                if r != rank && sys[r][col] != 0 {
                    let factor = sys[r][col];
                    for c in col..=k {
                        sys[r][c] = (sys[r][c] + (q - factor) * sys[rank][c] % q) % q;
                    }
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let mut coeffs = vec![0u32; k];
        for &(r, col) in &pivots {
            coeffs[col] = sys[r][k] as u32;
        }
        lambda.push(coeffs);
    }
    let spec = LinearIndexCodeSpec {
        matrix: a.clone(),
        basis_rows,
        lambda,
    };
    debug_assert!(lambda_reconstructs_rows(&spec));
    Ok(spec)
}

fn lambda_reconstructs_rows(spec: &LinearIndexCodeSpec) -> bool {
    let a = spec.matrix();
    let q = a.q() as u64;
    (0..a.n()).all(|i| {
        (0..a.n()).all(|c| {
            let sum: u64 = spec
                .basis_rows
                .iter()
                .enumerate()
                .map(|(t, &r)| spec.lambda[i][t] as u64 * a.rows()[r][c] as u64 % q)
                .sum();
            sum % q == a.rows()[i][c] as u64
        })
    })
}

/// The broadcast for `y`: inner products with the basis rows.
pub fn encode_linear(spec: &LinearIndexCodeSpec, y: &Word) -> Result<Vec<u32>> {
    let a = spec.matrix();
    if y.len() != a.n() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: a.n(),
        });
    }
    Ok(spec
        .basis_rows
        .iter()
        .map(|&r| row_dot(&a.rows()[r], y, a.q()))
        .collect())
}

/// Receiver `i` reconstructs (A·y)_i from the broadcast, subtracts the
/// neighbor terms it already knows, and divides by its diagonal entry.
pub fn decode_linear(
    spec: &LinearIndexCodeSpec,
    i: usize,
    broadcast: &[u32],
    side: &Word,
) -> Result<u32> {
    let a = spec.matrix();
    let q = a.q() as u64;
    if i >= a.n() {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            bound: a.n() as u64,
        });
    }
    if broadcast.len() != spec.basis_rows.len() {
        return Err(Error::LengthMismatch {
            left: broadcast.len(),
            right: spec.basis_rows.len(),
        });
    }
    let neighbors = a.graph().neighbors(i);
    if side.len() != neighbors.len() {
        return Err(Error::LengthMismatch {
            left: side.len(),
            right: neighbors.len(),
        });
    }
    let row_product: u64 = spec.lambda[i]
        .iter()
        .zip(broadcast)
        .map(|(&l, &b)| l as u64 * b as u64 % q)
        .sum::<u64>()
        % q;
    let known: u64 = neighbors
        .iter()
        .enumerate()
        .map(|(t, &j)| a.rows()[i][j] as u64 * side.symbol(t) as u64 % q)
        .sum::<u64>()
        % q;
    let inv = crate::alphabet::field_inv(a.rows()[i][i], a.q())? as u64;
    Ok(((row_product + q - known) % q * inv % q) as u32)
}

/// Checks the linear scheme on every word and receiver.
pub fn verify_linear_index_code(
    spec: &LinearIndexCodeSpec,
    limits: &Limits,
) -> Result<IndexVerification> {
    let a = spec.matrix();
    let space = Space::new(a.q(), a.n())?;
    limits.check_space(space.size() as u128)?;
    for r in 0..space.size() {
        let y = space.word(r)?;
        let broadcast = encode_linear(spec, &y)?;
        for j in 0..a.n() {
            let side = project(&y, a.graph().neighbors(j))?;
            match decode_linear(spec, j, &broadcast, &side) {
                Ok(sym) if sym == y.symbol(j) => {}
                _ => {
                    return Ok(IndexVerification {
                        valid: false,
                        failure: Some((y, j)),
                    })
                }
            }
        }
    }
    Ok(IndexVerification {
        valid: true,
        failure: None,
    })
}

/// All quantities of the two-sided bound for one graph, in symbols of
/// the (possibly lifted) alphabet Q = q^p. Verdicts are recomputed from
/// the stored numbers on every call.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub n: usize,
    pub q: u32,
    pub p: u32,
    pub rdss_size: u64,
    pub rdss_exact: bool,
    /// None when the lifted alphabet is composite (p > 1).
    pub minrank: Option<u32>,
    pub index_classes: u64,
    pub index_length_symbols: u32,
    pub greedy_classes: u64,
    pub hybrid_classes: u64,
}

impl DualityReport {
    /// The working alphabet size Q = q^p.
    pub fn alphabet_size(&self) -> u64 {
        (self.q as u64).pow(self.p)
    }

    /// log_Q of the code size.
    pub fn rdss_dim(&self) -> f64 {
        (self.rdss_size as f64).ln() / (self.alphabet_size() as f64).ln()
    }

    pub fn linear_dim(&self) -> Option<u32> {
        self.minrank.map(|r| self.n as u32 - r)
    }

    pub fn thm1_lower(&self) -> f64 {
        self.n as f64 - self.rdss_dim()
    }

    pub fn thm1_upper(&self) -> f64 {
        let ln_q = (self.alphabet_size() as f64).ln();
        let bound = (self.n as f64 * ln_q).min(1.0 + self.rdss_dim() * ln_q);
        self.thm1_lower() + bound.ln() / ln_q
    }

    /// n − dim ≤ ℓ, exactly: size·Q^ℓ ≥ Q^n.
    pub fn verdict_lower(&self) -> bool {
        let qq = self.alphabet_size() as u128;
        self.rdss_size as u128 * qq.pow(self.index_length_symbols) >= qq.pow(self.n as u32)
    }

    /// ℓ ≤ n − dim + log_Q(min{n ln Q, 1 + dim ln Q}) + 1, one symbol
    /// of slack absorbing integer rounding.
    pub fn verdict_upper(&self) -> bool {
        self.index_length_symbols as f64 <= self.thm1_upper() + 1.0 + 1e-9
    }

    /// dim ≥ n − minrank, exactly: size ≥ Q^{n−minrank}. None when no
    /// linear quantities were computed.
    pub fn verdict_eq6(&self) -> Option<bool> {
        let qq = self.alphabet_size() as u128;
        self.minrank
            .map(|r| self.rdss_size as u128 >= qq.pow(self.n as u32 - r))
    }

    /// Whether the best code strictly beats every linear one:
    /// size > Q^{n−minrank}.
    pub fn strict_linear_gap(&self) -> Option<bool> {
        let qq = self.alphabet_size() as u128;
        self.minrank
            .map(|r| self.rdss_size as u128 > qq.pow(self.n as u32 - r))
    }

    pub fn all_verdicts_pass(&self) -> bool {
        self.verdict_lower() && self.verdict_upper() && self.verdict_eq6().unwrap_or(true)
    }

    /// Line-oriented `key = value` serialization in pinned order.
    pub fn to_report_string(&self) -> String {
        let pass = |b: bool| if b { "pass" } else { "fail" };
        let mut s = String::new();
        s.push_str(&format!("n = {}\n", self.n));
        s.push_str(&format!("q = {}\n", self.q));
        s.push_str(&format!("p = {}\n", self.p));
        s.push_str(&format!("rdss_size = {}\n", self.rdss_size));
        s.push_str(&format!("rdss_dim = {:.6}\n", self.rdss_dim()));
        s.push_str(&format!("rdss_exact = {}\n", self.rdss_exact));
        if let Some(r) = self.minrank {
            s.push_str(&format!("minrank = {}\n", r));
            s.push_str(&format!("linear_dim = {}\n", self.linear_dim().unwrap()));
        }
        s.push_str(&format!("index_classes = {}\n", self.index_classes));
        s.push_str(&format!(
            "index_length_symbols = {}\n",
            self.index_length_symbols
        ));
        s.push_str(&format!("thm1_lower = {:.6}\n", self.thm1_lower()));
        s.push_str(&format!("thm1_upper = {:.6}\n", self.thm1_upper()));
        s.push_str(&format!("verdict_lower = {}\n", pass(self.verdict_lower())));
        s.push_str(&format!("verdict_upper = {}\n", pass(self.verdict_upper())));
        if let Some(v) = self.verdict_eq6() {
            s.push_str(&format!("verdict_eq6 = {}\n", pass(v)));
        }
        s.push_str(&format!("greedy_classes = {}\n", self.greedy_classes));
        s.push_str(&format!("hybrid_classes = {}\n", self.hybrid_classes));
        if self.strict_linear_gap() == Some(true) {
            s.push_str("strictness: rdss_dim > n - minrank\n");
        }
        s
    }

    /// Two-column human-readable table.
    pub fn to_pretty_string(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("vertices n".into(), self.n.to_string()),
            (
                "alphabet Q".into(),
                format!("{} (q={}, p={})", self.alphabet_size(), self.q, self.p),
            ),
            (
                "max storage code".into(),
                format!(
                    "{} words (dim {:.4}{})",
                    self.rdss_size,
                    self.rdss_dim(),
                    if self.rdss_exact { "" } else { ", not exact" }
                ),
            ),
            (
                "index code".into(),
                format!(
                    "{} classes -> {} symbols (greedy {}, hybrid {})",
                    self.index_classes,
                    self.index_length_symbols,
                    self.greedy_classes,
                    self.hybrid_classes
                ),
            ),
            (
                "length bounds".into(),
                format!("[{:.4}, {:.4}] + 1", self.thm1_lower(), self.thm1_upper()),
            ),
        ];
        if let Some(r) = self.minrank {
            rows.push((
                "minrank".into(),
                format!("{} (linear dim {})", r, self.linear_dim().unwrap()),
            ));
        }
        let verdicts = format!(
            "lower {}, upper {}{}",
            if self.verdict_lower() { "pass" } else { "fail" },
            if self.verdict_upper() { "pass" } else { "fail" },
            match self.verdict_eq6() {
                Some(v) => format!(", linear {}", if v { "pass" } else { "fail" }),
                None => String::new(),
            }
        );
        rows.push(("verdicts".into(), verdicts));
        if self.strict_linear_gap() == Some(true) {
            rows.push((
                "strictness".into(),
                "best code strictly beats every linear code".into(),
            ));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{:width$}  {}\n", k, v, width = width))
            .collect()
    }
}

fn best_cover_pair(
    code: &Codebook,
    graph: &StorageGraph,
    limits: &Limits,
) -> Result<(IndexCodeSpec, u64, u64)> {
    let greedy = index_from_rdss(code, graph, IndexMethod::Greedy, limits)?;
    let hybrid = index_from_rdss(code, graph, IndexMethod::Hybrid, limits)?;
    let (gm, hm) = (greedy.m(), hybrid.m());
    let chosen = if hm < gm { hybrid } else { greedy };
    let verification = verify_index_code(&chosen, limits)?;
    assert!(verification.valid, "constructed index code failed decode");
    assert!(cover_valid(chosen.cover(), limits)?.complete);
    Ok((chosen, gm, hm))
}

/// Runs the whole pipeline on one graph at alphabet size `alphabet`,
/// with or without the linear (minrank) route.
fn report_for_alphabet(
    graph: &StorageGraph,
    q: u32,
    p: u32,
    alphabet: u32,
    with_linear: bool,
    limits: &Limits,
) -> Result<DualityReport> {
    let search = rdss_exact(graph, alphabet, limits)?;
    let mr = if with_linear {
        let res = minrank(graph, alphabet, limits)?;
        let kernel = nullspace_code(&res.witness)?;
        debug_assert_eq!(
            kernel.len() as u128,
            (alphabet as u128).pow(graph.n() as u32 - res.rank)
        );
        debug_assert!(crate::confusion::is_rdss(&kernel, graph)?);
        Some(res.rank)
    } else {
        None
    };
    let (chosen, gm, hm) = best_cover_pair(&search.codebook, graph, limits)?;
    Ok(DualityReport {
        n: graph.n(),
        q,
        p,
        rdss_size: search.size,
        rdss_exact: search.exact,
        minrank: mr,
        index_classes: chosen.m(),
        index_length_symbols: chosen.length_symbols(),
        greedy_classes: gm,
        hybrid_classes: hm,
    })
}

/// Computes the exact storage capacity, the minrank route, and a
/// constructed index code for `graph`, then evaluates the two-sided
/// length bounds. Requires q prime (for minrank).
pub fn duality_report(graph: &StorageGraph, q: u32, limits: &Limits) -> Result<DualityReport> {
    report_for_alphabet(graph, q, 1, q, true, limits)
}

/// The same pipeline over the lifted alphabet Q = q^p, treating length-p
/// blocks of q-ary symbols as single symbols. Linear quantities are
/// omitted for p > 1 because Q is then composite; p = 1 is exactly
/// `duality_report`.
pub fn vector_report(
    graph: &StorageGraph,
    q: u32,
    p: u32,
    limits: &Limits,
) -> Result<DualityReport> {
    if p < 1 {
        return Err(Error::BadSize {
            family: "vector lift exponent",
            n: 0,
            min: 1,
        });
    }
    if p == 1 {
        return duality_report(graph, q, limits);
    }
    Alphabet::new(q)?;
    let alphabet = (q as u64)
        .checked_pow(p)
        .filter(|&v| v <= u32::MAX as u64)
        .ok_or(Error::SpaceExceeded {
            needed: (q as u128).saturating_pow(p),
            max_space: limits.max_space,
        })?;
    report_for_alphabet(graph, q, p, alphabet as u32, false, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_word;
    use crate::graph::{complete_graph, empty_graph};
    use crate::testkit::{pentagon_code, pentagon_graph};

    fn w(text: &str) -> Word {
        parse_word(text, 2).unwrap()
    }

    #[test]
    fn ceil_log_examples() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 5), 3);
        assert_eq!(ceil_log(2, 8), 3);
        assert_eq!(ceil_log(4, 16), 2);
        assert_eq!(ceil_log(3, 10), 3);
    }

    #[test]
    fn pentagon_greedy_spec_fixture() {
        let limits = Limits::default();
        let spec = index_from_rdss(
            &pentagon_code(),
            &pentagon_graph(),
            IndexMethod::Greedy,
            &limits,
        )
        .unwrap();
        assert_eq!(spec.m(), 8);
        assert_eq!(spec.length_symbols(), 3);
        assert!(verify_index_code(&spec, &limits).unwrap().valid);

        assert_eq!(encode_index(&spec, &w("00000")).unwrap(), 0);
        assert_eq!(encode_index(&spec, &w("01100")).unwrap(), 0);
        assert_eq!(encode_index(&spec, &w("10000")).unwrap(), 7);

        // Codeword 11011, receiver 3 (1-based), class 0: pure base
        // table lookup on neighborhood (2,4) = (1,1).
        let side = w("11");
        assert_eq!(decode_index(&spec, 0, 2, &side).unwrap(), 0);
    }

    #[test]
    fn decode_translation_identity() {
        let limits = Limits::default();
        let spec = index_from_rdss(
            &pentagon_code(),
            &pentagon_graph(),
            IndexMethod::Greedy,
            &limits,
        )
        .unwrap();
        let g = pentagon_graph();
        for (i, x) in spec.cover().translates().iter().enumerate() {
            for c in spec.base().words() {
                let y = crate::alphabet::word_add(c, x, 2).unwrap();
                for j in 0..5 {
                    let side = project(&y, g.neighbors(j)).unwrap();
                    assert_eq!(
                        decode_index(&spec, i as u64, j, &side).unwrap(),
                        (c.symbol(j) + x.symbol(j)) % 2
                    );
                }
            }
        }
    }

    #[test]
    fn singleton_on_empty_graph_broadcasts_everything() {
        let limits = Limits::default();
        let g = empty_graph(3).unwrap();
        let space = Space::new(2, 3).unwrap();
        let code = Codebook::from_ranks(&space, [0]).unwrap();
        let spec = index_from_rdss(&code, &g, IndexMethod::Greedy, &limits).unwrap();
        assert_eq!(spec.m(), 8);
        assert_eq!(spec.length_symbols(), 3);
        assert!(verify_index_code(&spec, &limits).unwrap().valid);
    }

    #[test]
    fn invalid_code_is_rejected_with_witness() {
        let limits = Limits::default();
        let bad = Codebook::new(vec![w("00000"), w("10000")], Alphabet::new(2).unwrap()).unwrap();
        match index_from_rdss(&bad, &pentagon_graph(), IndexMethod::Greedy, &limits) {
            Err(Error::NotRdss { reason }) => {
                assert!(reason.contains("00000"));
                assert!(reason.contains("10000"));
                assert!(reason.contains("vertex 1"));
            }
            other => panic!("expected NotRdss, got {other:?}"),
        }

        // The full space is never a storage code on a nonempty-word
        // graph, so the m = 1 trivial cover is unreachable.
        let space = Space::new(2, 2).unwrap();
        let full = Codebook::from_ranks(&space, 0..4).unwrap();
        assert!(matches!(
            index_from_rdss(
                &full,
                &complete_graph(2).unwrap(),
                IndexMethod::Greedy,
                &limits
            ),
            Err(Error::NotRdss { .. })
        ));
    }

    #[test]
    fn random_method_completeness_gate() {
        let limits = Limits::default();
        let result = index_from_rdss(
            &pentagon_code(),
            &pentagon_graph(),
            IndexMethod::Random { seed: 0, m: 2 },
            &limits,
        );
        assert!(matches!(result, Err(Error::IncompleteCover { .. })));
    }

    #[test]
    fn corrupted_cover_fails_verification() {
        let limits = Limits::default();
        let full = greedy_cover(&pentagon_code(), CoverVariant::Full, &limits).unwrap();
        let mut text = String::new();
        // Drop the last translate line.
        let serialized = full.to_file_string("x");
        let lines: Vec<&str> = serialized.lines().collect();
        text.push_str(&lines[0].replace("m=8", "m=7"));
        text.push('\n');
        for l in &lines[1..8] {
            text.push_str(l);
            text.push('\n');
        }
        let cover = crate::covering::parse_cover(&text, &pentagon_code(), &limits).unwrap();
        assert!(!cover.is_complete());
        let spec = IndexCodeSpec::new(&pentagon_graph(), cover).unwrap();
        let check = verify_index_code(&spec, &limits).unwrap();
        assert!(!check.valid);
        assert!(check.failure.is_some());
    }

    /// The hand-written length-3 linear broadcast for the pentagon:
    /// (y2+y3, y4+y5, y1+y2+y3+y4+y5), as a class value in 0..8.
    fn pentagon_linear_encoding(y: &Word) -> u64 {
        let s = y.symbols();
        let b1 = (s[1] + s[2]) % 2;
        let b2 = (s[3] + s[4]) % 2;
        let b3 = (s[0] + s[1] + s[2] + s[3] + s[4]) % 2;
        (b1 * 4 + b2 * 2 + b3) as u64
    }

    #[test]
    fn explicit_linear_scheme_decodes_and_yields_a_fiber() {
        // Decoding identities: y1 = b1+b2+b3, y2 = b1+y3, y3 = b1+y2,
        // y4 = b2+y5, y5 = b2+y4; all 32 inputs, all 5 receivers.
        let space = Space::new(2, 5).unwrap();
        for r in 0..32 {
            let y = space.word(r).unwrap();
            let s = y.symbols().to_vec();
            let b1 = (s[1] + s[2]) % 2;
            let b2 = (s[3] + s[4]) % 2;
            let b3 = (s[0] + s[1] + s[2] + s[3] + s[4]) % 2;
            assert_eq!(s[0], (b1 + b2 + b3) % 2);
            assert_eq!(s[1], (b1 + s[2]) % 2);
            assert_eq!(s[2], (b1 + s[1]) % 2);
            assert_eq!(s[3], (b2 + s[4]) % 2);
            assert_eq!(s[4], (b2 + s[3]) % 2);
        }

        let limits = Limits::default();
        let fiber =
            rdss_from_index(pentagon_linear_encoding, &pentagon_graph(), 2, &limits).unwrap();
        assert_eq!(fiber.codebook.len(), 4);
        assert!(fiber.valid);
        assert_eq!(fiber.class, 0);
        let ranks: Vec<u64> = fiber
            .codebook
            .words()
            .iter()
            .map(|w| space.rank(w).unwrap())
            .collect();
        assert_eq!(ranks, vec![0, 3, 12, 15]);
    }

    #[test]
    fn fiber_extraction_edge_cases() {
        let limits = Limits::default();
        let g = pentagon_graph();
        // Constant encoding: the fiber is the whole space, which is
        // never a valid storage code, and the extraction says so.
        let fiber = rdss_from_index(|_| 0, &g, 2, &limits).unwrap();
        assert_eq!(fiber.codebook.len(), 32);
        assert!(!fiber.valid);

        // Injective encoding: singleton fiber, always valid.
        let space = Space::new(2, 5).unwrap();
        let fiber = rdss_from_index(|y| space.rank(y).unwrap(), &g, 2, &limits).unwrap();
        assert_eq!(fiber.codebook.len(), 1);
        assert!(fiber.valid);
        assert_eq!(fiber.class, 0);
    }

    #[test]
    fn round_trip_dimension_bound() {
        let limits = Limits::default();
        for method in [IndexMethod::Greedy, IndexMethod::Hybrid] {
            let spec =
                index_from_rdss(&pentagon_code(), &pentagon_graph(), method, &limits).unwrap();
            let fiber = rdss_from_index(
                |y| encode_index(&spec, y).unwrap(),
                &pentagon_graph(),
                2,
                &limits,
            )
            .unwrap();
            assert!(fiber.valid);
            // |fiber| · q^ℓ ≥ q^n exactly.
            assert!(
                (fiber.codebook.len() as u128) << spec.length_symbols() >= 32,
                "fiber {} length {}",
                fiber.codebook.len(),
                spec.length_symbols()
            );
        }
    }

    #[test]
    fn linear_scheme_trivial_matrices() {
        let limits = Limits::default();
        let g = empty_graph(3).unwrap();
        let rows: Vec<Vec<u32>> = (0..3)
            .map(|i| (0..3).map(|j| u32::from(i == j)).collect())
            .collect();
        let a = FittingMatrix::new(g, 2, rows).unwrap();
        let spec = linear_index_from_fitting(&a).unwrap();
        assert_eq!(spec.length_symbols(), 3);
        assert_eq!(spec.basis_rows(), &[0, 1, 2]);
        let y = w("101");
        assert_eq!(encode_linear(&spec, &y).unwrap(), vec![1, 0, 1]);
        assert!(verify_linear_index_code(&spec, &limits).unwrap().valid);

        let g = complete_graph(3).unwrap();
        let a = FittingMatrix::new(g, 2, vec![vec![1; 3]; 3]).unwrap();
        let spec = linear_index_from_fitting(&a).unwrap();
        assert_eq!(spec.length_symbols(), 1);
        assert_eq!(spec.basis_rows(), &[0]);
        assert_eq!(encode_linear(&spec, &w("110")).unwrap(), vec![0]);
        assert!(verify_linear_index_code(&spec, &limits).unwrap().valid);
    }

    #[test]
    fn linear_scheme_from_minrank_witness() {
        let limits = Limits::default();
        let res = minrank(&pentagon_graph(), 2, &limits).unwrap();
        let spec = linear_index_from_fitting(&res.witness).unwrap();
        assert_eq!(spec.length_symbols(), 3);
        assert!(verify_linear_index_code(&spec, &limits).unwrap().valid);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn linear_scheme_over_odd_prime() {
        let limits = Limits::default();
        let mut rng = crate::rng::SplitMix64::new(29);
        for _ in 0..10 {
            let n = 2 + rng.below(2) as usize;
            let adj = (0..n)
                .map(|i| (0..n).filter(|&j| j != i && rng.coin()).collect())
                .collect();
            let g = StorageGraph::new(n, adj).unwrap();
            let mut rows = vec![vec![0u32; n]; n];
            for i in 0..n {
                rows[i][i] = 1 + rng.below(4) as u32;
                for &j in g.neighbors(i) {
                    rows[i][j] = rng.below(5) as u32;
                }
            }
            let a = FittingMatrix::new(g, 5, rows).unwrap();
            let spec = linear_index_from_fitting(&a).unwrap();
            assert_eq!(spec.length_symbols(), a.rank());
            assert!(verify_linear_index_code(&spec, &limits).unwrap().valid);
        }
    }

    #[test]
    fn pentagon_report_numbers() {
        let limits = Limits::default();
        let report = duality_report(&pentagon_graph(), 2, &limits).unwrap();
        assert_eq!(report.n, 5);
        assert_eq!(report.rdss_size, 5);
        assert!(report.rdss_exact);
        assert_eq!(report.minrank, Some(3));
        assert_eq!(report.linear_dim(), Some(2));
        assert_eq!(report.index_classes, 8);
        assert_eq!(report.index_length_symbols, 3);
        assert_eq!(report.greedy_classes, 8);
        assert_eq!(report.hybrid_classes, 8);
        assert!(report.verdict_lower());
        assert!(report.verdict_upper());
        assert_eq!(report.verdict_eq6(), Some(true));
        assert_eq!(report.strict_linear_gap(), Some(true));
        assert!(report.all_verdicts_pass());
        let text = report.to_report_string();
        assert!(text.contains("rdss_dim = 2.321928\n"));
        assert!(text.contains("strictness: rdss_dim > n - minrank\n"));
    }

    #[test]
    fn trivial_graph_reports() {
        let limits = Limits::default();
        let report = duality_report(&empty_graph(2).unwrap(), 2, &limits).unwrap();
        assert_eq!(report.rdss_size, 1);
        assert_eq!(report.minrank, Some(2));
        assert_eq!(report.index_length_symbols, 2);
        assert!(report.all_verdicts_pass());
        assert_eq!(report.strict_linear_gap(), Some(false));

        let report = duality_report(&complete_graph(3).unwrap(), 2, &limits).unwrap();
        assert_eq!(report.rdss_size, 4);
        assert_eq!(report.minrank, Some(1));
        assert_eq!(report.index_classes, 2);
        assert_eq!(report.index_length_symbols, 1);
        assert!(report.all_verdicts_pass());
    }

    #[test]
    fn vector_report_degenerates_at_p1() {
        let limits = Limits::default();
        let scalar = duality_report(&pentagon_graph(), 2, &limits).unwrap();
        let lifted = vector_report(&pentagon_graph(), 2, 1, &limits).unwrap();
        assert_eq!(scalar, lifted);
        assert_eq!(scalar.to_report_string(), lifted.to_report_string());
    }

    #[test]
    fn vector_report_complete3_p2() {
        let limits = Limits::default();
        let report = vector_report(&complete_graph(3).unwrap(), 2, 2, &limits).unwrap();
        assert_eq!(report.alphabet_size(), 4);
        assert_eq!(report.rdss_size, 16);
        assert_eq!(report.minrank, None);
        assert!(report.verdict_lower());
        assert!(report.verdict_upper());
        assert_eq!(report.verdict_eq6(), None);
        assert!(report.all_verdicts_pass());
        let text = report.to_report_string();
        assert!(!text.contains("minrank"));
        assert!(!text.contains("verdict_eq6"));
    }

    #[test]
    fn vector_report_empty2_p2() {
        let limits = Limits::default();
        let report = vector_report(&empty_graph(2).unwrap(), 2, 2, &limits).unwrap();
        assert_eq!(report.rdss_size, 1);
        assert_eq!(report.index_length_symbols, 2);
        assert!(report.all_verdicts_pass());
        assert!(matches!(
            vector_report(&empty_graph(2).unwrap(), 2, 0, &limits),
            Err(Error::BadSize { .. })
        ));
    }
}
