//! Storage codes and per-vertex recovery.
//!
//! Two words are confusable on a graph when some vertex disagrees while
//! its whole neighborhood agrees: that vertex could not tell the two
//! words apart from what it is allowed to read. A codebook is a valid
//! storage code exactly when no two codewords are confusable, which is
//! the same as every vertex having a well-defined recovery table from
//! neighborhood projections to its own symbol.

use std::collections::HashMap;

use crate::alphabet::{format_word, parse_word, project, word_add, Alphabet, Space, Word};
use crate::error::{Error, Result};
use crate::graph::StorageGraph;

/// Nonempty set of distinct equal-length words, kept sorted by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    alphabet: Alphabet,
    n: usize,
    words: Vec<Word>,
}

impl Codebook {
    pub fn new(words: Vec<Word>, alphabet: Alphabet) -> Result<Self> {
        let q = alphabet.size();
        let n = match words.first() {
            Some(w) => w.len(),
            None => return Err(Error::EmptyCodebook),
        };
        let mut words = words;
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    left: w.len(),
                    right: n,
                });
            }
            for &s in w.symbols() {
                if s >= q {
                    return Err(Error::SymbolOutOfRange { symbol: s, q });
                }
            }
        }
        words.sort();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord {
                word: format_word(&pair[0], q),
            });
        }
        Ok(Codebook { alphabet, n, words })
    }

    pub fn from_ranks(space: &Space, ranks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let words = ranks
            .into_iter()
            .map(|r| space.word(r))
            .collect::<Result<Vec<_>>>()?;
        Codebook::new(words, Alphabet::new(space.q())?)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> u32 {
        self.alphabet.size()
    }

    /// Common word length, i.e. the number of graph vertices it matches.
    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// The translated code `C + a`, valid whenever `C` is (recovery
    /// functions translate along with the words).
    pub fn translate(&self, a: &Word) -> Result<Codebook> {
        let q = self.q();
        let words = self
            .words
            .iter()
            .map(|w| word_add(w, a, q))
            .collect::<Result<Vec<_>>>()?;
        Codebook::new(words, self.alphabet)
    }

    /// Canonical file form: `n q count` header, then one word per line.
    pub fn to_file_string(&self) -> String {
        let q = self.q();
        let mut out = format!("{} {} {}\n", self.n, q, self.words.len());
        for w in &self.words {
            out.push_str(&format_word(w, q));
            out.push('\n');
        }
        out
    }
}

/// Parses the codebook file format: `#` comments, `n q count` header,
/// then `count` word lines.
pub fn parse_codebook(text: &str) -> Result<Codebook> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty codebook file".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 3 {
        return Err(Error::Parse {
            line: header_no,
            msg: "expected `n q count`".into(),
        });
    }
    let parse_num = |tok: &str| -> Result<u64> {
        tok.parse().map_err(|_| Error::Parse {
            line: header_no,
            msg: "expected a number".into(),
        })
    };
    let n = parse_num(nums[0])? as usize;
    let q = parse_num(nums[1])? as u32;
    let count = parse_num(nums[2])?;
    let alphabet = Alphabet::new(q)?;

    let mut words = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_no,
            msg: format!("expected {count} word lines"),
        })?;
        let w = parse_word(line, q).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
            other => other,
        })?;
        if w.len() != n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected a word of length {n}"),
            });
        }
        words.push(w);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            msg: "trailing content after the declared words".into(),
        });
    }
    Codebook::new(words, alphabet)
}

/// True when some vertex differs between `x` and `y` while its whole
/// neighborhood agrees. Symmetric, and invariant under translating both
/// words by the same offset.
pub fn confusable(x: &Word, y: &Word, graph: &StorageGraph) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() != graph.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: graph.n(),
        });
    }
    for i in 0..graph.n() {
        if x.symbol(i) != y.symbol(i)
            && graph
                .neighbors(i)
                .iter()
                .all(|&j| x.symbol(j) == y.symbol(j))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

pub(crate) fn first_confusable_pair(
    code: &Codebook,
    graph: &StorageGraph,
) -> Result<Option<(Word, Word, usize)>> {
    let words = code.words();
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let (x, y) = (&words[a], &words[b]);
            if x.len() != graph.n() {
                return Err(Error::LengthMismatch {
                    left: x.len(),
                    right: graph.n(),
                });
            }
            for i in 0..graph.n() {
                if x.symbol(i) != y.symbol(i)
                    && graph
                        .neighbors(i)
                        .iter()
                        .all(|&j| x.symbol(j) == y.symbol(j))
                {
                    return Ok(Some((x.clone(), y.clone(), i)));
                }
            }
        }
    }
    Ok(None)
}

/// True when no two codewords are confusable, i.e. every coordinate of
/// every codeword is recoverable from its neighborhood.
pub fn is_rdss(code: &Codebook, graph: &StorageGraph) -> Result<bool> {
    Ok(first_confusable_pair(code, graph)?.is_none())
}

/// Per-vertex partial maps from neighborhood projection to own symbol.
/// Exists exactly for valid storage codes.
#[derive(Debug, Clone)]
pub struct RecoveryTable {
    graph: StorageGraph,
    q: u32,
    tables: Vec<HashMap<Word, u32>>,
}

impl RecoveryTable {
    pub fn graph(&self) -> &StorageGraph {
        &self.graph
    }

    /// The recovery map of one vertex; keys are projections onto its
    /// sorted neighborhood.
    pub fn table(&self, vertex: usize) -> &HashMap<Word, u32> {
        &self.tables[vertex]
    }

    pub fn lookup(&self, vertex: usize, projection: &Word) -> Option<u32> {
        self.tables[vertex].get(projection).copied()
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// Builds the recovery tables, or reports the confusable pair that makes
/// some vertex ambiguous.
pub fn recovery_table(code: &Codebook, graph: &StorageGraph) -> Result<RecoveryTable> {
    if code.word_len() != graph.n() {
        return Err(Error::LengthMismatch {
            left: code.word_len(),
            right: graph.n(),
        });
    }
    let q = code.q();
    let mut tables: Vec<HashMap<Word, u32>> = vec![HashMap::new(); graph.n()];
    // Remember which codeword defined each entry so a conflict can name
    // the confusable pair.
    let mut sources: Vec<HashMap<Word, usize>> = vec![HashMap::new(); graph.n()];
    for (idx, w) in code.words().iter().enumerate() {
        for i in 0..graph.n() {
            let key = project(w, graph.neighbors(i))?;
            match tables[i].get(&key) {
                None => {
                    tables[i].insert(key.clone(), w.symbol(i));
                    sources[i].insert(key, idx);
                }
                Some(&val) if val == w.symbol(i) => {}
                Some(_) => {
                    let prev = &code.words()[sources[i][&key]];
                    return Err(Error::ConfusablePair {
                        x: format_word(prev, q),
                        y: format_word(w, q),
                        vertex: i + 1,
                    });
                }
            }
        }
    }
    Ok(RecoveryTable {
        graph: graph.clone(),
        q,
        tables,
    })
}

/// Recovers the erased coordinate of `x` from its neighborhood via the
/// table; the stored value at `erased` is ignored.
pub fn repair(x: &Word, erased: usize, table: &RecoveryTable) -> Result<u32> {
    let graph = table.graph();
    if x.len() != graph.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: graph.n(),
        });
    }
    if erased >= graph.n() {
        return Err(Error::IndexOutOfRange {
            index: erased as u64,
            bound: graph.n() as u64,
        });
    }
    let key = project(x, graph.neighbors(erased))?;
    table
        .lookup(erased, &key)
        .ok_or_else(|| Error::UnknownProjection {
            projection: format_word(&key, table.q()),
            vertex: erased + 1,
        })
}
