//! Covering the word space by translates of a codebook.
//!
//! The greedy construction repeatedly picks the shift z that most
//! enlarges F ∪ (F + z). Averaging over all shifts, the uncovered
//! fraction of F ∪ (F + z) equals Q(F)² exactly, so the best shift at
//! least squares the uncovered fraction; doubling therefore needs few
//! rounds, and the resulting translate list is the subset-sum family of
//! the chosen generators. The hybrid variant stops doubling once the
//! uncovered count drops to q^n/|C| and covers each remaining word with
//! one dedicated translate.

use num_rational::Ratio;

use crate::alphabet::{format_word, parse_word, Space, Word};
use crate::confusion::Codebook;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Subset of a word space, stored as a bitset over ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    space: Space,
    bits: Vec<u64>,
    count: u64,
}

impl WordSet {
    pub fn empty(space: Space) -> Self {
        let blocks = (space.size() as usize).div_ceil(64);
        WordSet {
            space,
            bits: vec![0; blocks],
            count: 0,
        }
    }

    pub fn from_codebook(code: &Codebook) -> Result<Self> {
        let space = Space::new(code.q(), code.word_len())?;
        let mut set = WordSet::empty(space);
        for w in code.words() {
            set.insert(set.space.rank(w)?);
        }
        Ok(set)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn insert(&mut self, rank: u64) {
        let (block, bit) = ((rank / 64) as usize, rank % 64);
        if self.bits[block] >> bit & 1 == 0 {
            self.bits[block] |= 1 << bit;
            self.count += 1;
        }
    }

    pub fn contains(&self, rank: u64) -> bool {
        self.bits[(rank / 64) as usize] >> (rank % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.space.size()
    }

    /// Ranks of the members, ascending.
    pub fn ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(block, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(block as u64 * 64 + b)
            })
        })
    }

    /// Ranks of the non-members, ascending.
    pub fn missing_ranks(&self) -> Vec<u64> {
        (0..self.space.size())
            .filter(|&r| !self.contains(r))
            .collect()
    }

    /// |self ∪ (self + z)| without building the union.
    pub fn doubled_size(&self, z: u64) -> u64 {
        let fresh = self
            .ranks()
            .filter(|&r| !self.contains(self.space.add(r, z)))
            .count() as u64;
        self.count + fresh
    }

    /// self ∪ (self + z).
    pub fn doubled(&self, z: u64) -> WordSet {
        let mut out = self.clone();
        let ranks: Vec<u64> = self.ranks().collect();
        for r in ranks {
            out.insert(self.space.add(r, z));
        }
        out
    }
}

/// Exact uncovered fraction Q(F) = 1 − |F|/q^n.
pub fn uncovered_fraction(f: &WordSet) -> Ratio<u64> {
    Ratio::new(f.space().size() - f.len(), f.space().size())
}

/// Σ over all shifts x of |(C + x) ∩ B|, by direct summation. Equals
/// |C|·|B|; the identity is what the tests check, not what this
/// function assumes.
pub fn bes_sum(c: &WordSet, b: &WordSet, limits: &Limits) -> Result<u128> {
    if c.space() != b.space() {
        return Err(Error::LengthMismatch {
            left: c.space().n(),
            right: b.space().n(),
        });
    }
    let space = c.space();
    limits.check_space(space.size() as u128)?;
    let b_ranks: Vec<u64> = b.ranks().collect();
    let mut total: u128 = 0;
    for x in 0..space.size() {
        // b ∈ C + x exactly when b − x ∈ C.
        total += b_ranks
            .iter()
            .filter(|&&r| c.contains(space.sub(r, x)))
            .count() as u128;
    }
    Ok(total)
}

/// The chosen shift and the enlarged set F ∪ (F + z).
#[derive(Debug, Clone)]
pub struct DoublingStep {
    pub z: Word,
    pub new_set: WordSet,
}

/// Scans every shift z and returns the one maximizing |F ∪ (F + z)|,
/// smallest rank on ties. The result always satisfies
/// Q(new) ≤ Q(F)², because the average of Q(F ∪ (F+x)) over all x is
/// exactly Q(F)².
pub fn best_doubling_step(f: &WordSet, limits: &Limits) -> Result<DoublingStep> {
    if f.is_empty() {
        return Err(Error::EmptySet);
    }
    let space = f.space();
    limits.check_space(space.size() as u128)?;
    let mut best_z = 0u64;
    let mut best_size = f.doubled_size(0);
    for z in 1..space.size() {
        let size = f.doubled_size(z);
        if size > best_size {
            best_size = size;
            best_z = z;
        }
        if best_size == space.size() {
            break;
        }
    }
    let new_set = f.doubled(best_z);
    debug_assert_eq!(new_set.len(), best_size);
    // Contraction guarantee, in integers: u_new · q^n ≤ u_old².
    let (total, u_old, u_new) = (
        space.size() as u128,
        (space.size() - f.len()) as u128,
        (space.size() - best_size) as u128,
    );
    assert!(u_new * total <= u_old * u_old);
    Ok(DoublingStep {
        z: space.word(best_z)?,
        new_set,
    })
}

/// How a cover's translate list was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMethod {
    Greedy,
    Hybrid,
    Random,
}

impl CoverMethod {
    pub fn tag(self) -> &'static str {
        match self {
            CoverMethod::Greedy => "greedy",
            CoverMethod::Hybrid => "hybrid",
            CoverMethod::Random => "random",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "greedy" => Some(CoverMethod::Greedy),
            "hybrid" => Some(CoverMethod::Hybrid),
            "random" => Some(CoverMethod::Random),
            _ => None,
        }
    }
}

/// An ordered list of shifts x_0 = 0, x_1, … whose translates of a base
/// codebook are meant to cover the whole word space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateCover {
    base: Codebook,
    translates: Vec<Word>,
    doubling_generators: Vec<Word>,
    method: CoverMethod,
    complete: bool,
    uncovered_count: u64,
}

impl TranslateCover {
    pub fn base(&self) -> &Codebook {
        &self.base
    }

    pub fn translates(&self) -> &[Word] {
        &self.translates
    }

    /// Number of translate classes.
    pub fn m(&self) -> u64 {
        self.translates.len() as u64
    }

    pub fn doubling_generators(&self) -> &[Word] {
        &self.doubling_generators
    }

    pub fn method(&self) -> CoverMethod {
        self.method
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn uncovered_count(&self) -> u64 {
        self.uncovered_count
    }

    fn space(&self) -> Result<Space> {
        Space::new(self.base.q(), self.base.word_len())
    }

    /// Header line, one word per translate, generators flagged `g `.
    pub fn to_file_string(&self, base_ref: &str) -> String {
        let q = self.base.q();
        let gen_indices: Vec<usize> = (0..self.doubling_generators.len())
            .map(|i| 1usize << i)
            .collect();
        let mut out = format!(
            "base={} m={} method={}\n",
            base_ref,
            self.translates.len(),
            self.method.tag()
        );
        for (i, x) in self.translates.iter().enumerate() {
            if gen_indices.contains(&i) {
                out.push_str("g ");
            }
            out.push_str(&format_word(x, q));
            out.push('\n');
        }
        out
    }
}

/// Union of all translates base + x_i as a word set.
fn cover_union(cv: &TranslateCover) -> Result<WordSet> {
    let space = cv.space()?;
    let mut covered = WordSet::empty(space);
    for x in &cv.translates {
        let xr = space.rank(x)?;
        for c in cv.base.words() {
            covered.insert(space.add(space.rank(c)?, xr));
        }
    }
    Ok(covered)
}

fn finish_cover(
    base: &Codebook,
    translate_ranks: Vec<u64>,
    generator_ranks: Vec<u64>,
    method: CoverMethod,
) -> Result<TranslateCover> {
    let space = Space::new(base.q(), base.word_len())?;
    let translates = translate_ranks
        .iter()
        .map(|&r| space.word(r))
        .collect::<Result<Vec<_>>>()?;
    let doubling_generators = generator_ranks
        .iter()
        .map(|&r| space.word(r))
        .collect::<Result<Vec<_>>>()?;
    let mut cv = TranslateCover {
        base: base.clone(),
        translates,
        doubling_generators,
        method,
        complete: false,
        uncovered_count: 0,
    };
    let covered = cover_union(&cv)?;
    cv.uncovered_count = space.size() - covered.len();
    cv.complete = cv.uncovered_count == 0;
    Ok(cv)
}

/// All 2^t subset-sums of the generators; generator 0 is the least
/// significant selector bit, so sums come in subset-lexicographic order.
fn subset_sums(space: &Space, gens: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &z in gens {
        let shifted: Vec<u64> = out.iter().map(|&x| space.add(x, z)).collect();
        out.extend(shifted);
    }
    out
}

/// Greedy doubling variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverVariant {
    /// Double until the whole space is covered; m = 2^t.
    Full,
    /// Double until at most q^n/|C| words are uncovered, then add one
    /// dedicated translate per uncovered word, in rank order.
    Hybrid,
}

/// Builds a complete cover of F_q^n by translates of `base`.
///
/// The full variant satisfies m ≤ 2·(q^n/|C|)·n·ln q and the hybrid
/// variant m ≤ 2·(q^n/|C|)·(ln|C| + 1) + 2; both bounds are asserted.
pub fn greedy_cover(
    base: &Codebook,
    variant: CoverVariant,
    limits: &Limits,
) -> Result<TranslateCover> {
    let mut f = WordSet::from_codebook(base)?;
    let space = *f.space();
    limits.check_space(space.size() as u128)?;
    let csize = base.len() as u64;
    let stop_at_uncovered = match variant {
        CoverVariant::Full => 0,
        // u ≤ q^n/|C| in exact arithmetic: u·|C| ≤ q^n.
        CoverVariant::Hybrid => space.size() / csize,
    };
    let mut gens: Vec<u64> = Vec::new();
    while space.size() - f.len() > stop_at_uncovered {
        let step = best_doubling_step(&f, limits)?;
        gens.push(space.rank(&step.z)?);
        f = step.new_set;
    }
    let mut translate_ranks = subset_sums(&space, &gens);
    let method = match variant {
        CoverVariant::Full => CoverMethod::Greedy,
        CoverVariant::Hybrid => CoverMethod::Hybrid,
    };
    if variant == CoverVariant::Hybrid {
        let c0 = space.rank(&base.words()[0])?;
        for p in f.missing_ranks() {
            translate_ranks.push(space.sub(p, c0));
        }
    }
    let cover = finish_cover(base, translate_ranks, gens, method)?;
    assert!(cover.is_complete());
    let (m, total, cs, n) = (
        cover.m() as f64,
        space.size() as f64,
        csize as f64,
        base.word_len() as f64,
    );
    match variant {
        CoverVariant::Full => {
            assert!(m <= 2.0 * (total / cs) * n * f64::from(space.q()).ln() + 1e-9);
        }
        CoverVariant::Hybrid => {
            assert!(m <= 2.0 * (total / cs) * (cs.ln() + 1.0) + 2.0 + 1e-9);
        }
    }
    Ok(cover)
}

/// x_0 = 0 plus m − 1 shifts drawn uniformly from a seeded generator;
/// completeness is verified, not guaranteed.
pub fn random_cover(base: &Codebook, m: u64, seed: u64, limits: &Limits) -> Result<TranslateCover> {
    if m < 1 {
        return Err(Error::BadSize {
            family: "random cover",
            n: 0,
            min: 1,
        });
    }
    let space = Space::new(base.q(), base.word_len())?;
    limits.check_space(space.size() as u128)?;
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut translate_ranks = vec![0u64];
    for _ in 1..m {
        translate_ranks.push(rng.below(space.size()));
    }
    finish_cover(base, translate_ranks, Vec::new(), CoverMethod::Random)
}

/// Outcome of re-checking a cover against the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub complete: bool,
    pub uncovered: Vec<Word>,
}

/// Definitional completeness re-check; uncovered words in rank order.
pub fn cover_valid(cv: &TranslateCover, limits: &Limits) -> Result<CoverCheck> {
    let space = cv.space()?;
    limits.check_space(space.size() as u128)?;
    let covered = cover_union(cv)?;
    let uncovered = covered
        .missing_ranks()
        .into_iter()
        .map(|r| space.word(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverCheck {
        complete: uncovered.is_empty(),
        uncovered,
    })
}

/// Replaces the translate list by the full linear span of the doubling
/// generators, plus one coset of that span per finisher translate. The
/// new list contains the old one as a set, so a complete cover stays
/// complete; for q = 2 with independent generators the doubling block
/// is unchanged.
pub fn cover_subspace_closure(cv: &TranslateCover, limits: &Limits) -> Result<TranslateCover> {
    if cv.doubling_generators().is_empty() {
        return Err(Error::NoGenerators);
    }
    let space = cv.space()?;
    limits.check_space(space.size() as u128)?;
    let gens: Vec<u64> = cv
        .doubling_generators()
        .iter()
        .map(|z| space.rank(z))
        .collect::<Result<_>>()?;
    // Span as all coefficient combinations, generator 0's coefficient
    // fastest, deduplicated keeping first occurrence.
    let mut span: Vec<u64> = Vec::new();
    let mut coeffs = vec![0u32; gens.len()];
    loop {
        let mut sum = 0u64;
        for (k, &z) in gens.iter().enumerate() {
            sum = space.add(sum, space.scale(coeffs[k], z));
        }
        if !span.contains(&sum) {
            span.push(sum);
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                break;
            }
            coeffs[k] += 1;
            if coeffs[k] == space.q() {
                coeffs[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        if coeffs.iter().all(|&c| c == 0) {
            break;
        }
    }
    let doubling_block = 1usize << gens.len();
    let finishers: Vec<u64> = cv.translates()[doubling_block.min(cv.translates().len())..]
        .iter()
        .map(|x| space.rank(x))
        .collect::<Result<_>>()?;
    let mut translate_ranks = span.clone();
    for &x in &finishers {
        for &s in &span {
            let shifted = space.add(x, s);
            if !translate_ranks.contains(&shifted) {
                translate_ranks.push(shifted);
            }
        }
    }
    finish_cover(cv.base(), translate_ranks, gens, cv.method())
}

/// Parses the cover file format against its base codebook and verifies
/// coverage.
pub fn parse_cover(text: &str, base: &Codebook, limits: &Limits) -> Result<TranslateCover> {
    let space = Space::new(base.q(), base.word_len())?;
    limits.check_space(space.size() as u128)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty cover file".into(),
    })?;
    let mut m: Option<u64> = None;
    let mut method: Option<CoverMethod> = None;
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("base", _)) => {}
            Some(("m", v)) => {
                m = Some(v.parse().map_err(|_| Error::Parse {
                    line: header_no,
                    msg: "bad m= value".into(),
                })?)
            }
            Some(("method", v)) => {
                method = CoverMethod::from_tag(v);
                if method.is_none() {
                    return Err(Error::Parse {
                        line: header_no,
                        msg: format!("unknown method tag `{v}`"),
                    });
                }
            }
            _ => {
                return Err(Error::Parse {
                    line: header_no,
                    msg: format!("unexpected header token `{tok}`"),
                })
            }
        }
    }
    let (Some(m), Some(method)) = (m, method) else {
        return Err(Error::Parse {
            line: header_no,
            msg: "header must carry m= and method=".into(),
        });
    };
    let mut translate_ranks = Vec::new();
    let mut generator_ranks = Vec::new();
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_no,
            msg: format!("expected {m} translate lines"),
        })?;
        let (is_gen, body) = match line.strip_prefix("g ") {
            Some(rest) => (true, rest.trim()),
            None => (false, line),
        };
        let w = parse_word(body, base.q()).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
            other => other,
        })?;
        if w.len() != base.word_len() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected a word of length {}", base.word_len()),
            });
        }
        let r = space.rank(&w)?;
        if is_gen {
            generator_ranks.push(r);
        }
        translate_ranks.push(r);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            msg: "trailing content after the declared translates".into(),
        });
    }
    if translate_ranks.first() != Some(&0) {
        return Err(Error::Parse {
            line: header_no,
            msg: "first translate must be the zero word".into(),
        });
    }
    finish_cover(base, translate_ranks, generator_ranks, method)
}
