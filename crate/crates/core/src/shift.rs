//! Points of the full shift over a finite alphabet.
//!
//! A [`SymbolicPoint`] is a total, deterministic map `Z -> symbol`. Points are
//! never materialized; every operation evaluates the coordinates it needs.
//! Coordinates are `i64`; the shift saturates at the ends of that range.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::setclass::IntegerSet;
use crate::{Error, Result};

pub type Symbol = u8;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Symbols `0..size`. Sizes run from 2 to 36 so every symbol has a one-character digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(u16);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(size: u16) -> Result<Self> {
        match size {
            0 | 1 => Err(Error::AlphabetTooSmall(size)),
            2..=36 => Ok(Alphabet(size)),
            _ => Err(Error::AlphabetTooLarge(size)),
        }
    }

    pub fn size(self) -> u16 {
        self.0
    }

    pub fn check(self, symbol: Symbol) -> Result<()> {
        if u16::from(symbol) < self.0 {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange { symbol, size: self.0 })
        }
    }

    /// Number of words of length `len`, when it fits in a `u64`.
    pub fn word_count(self, len: usize) -> Option<u64> {
        u64::from(self.0).checked_pow(u32::try_from(len).ok()?)
    }
}

/// A nonempty finite sequence of symbols, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(symbols))
    }

    /// Parses a digit string (`0-9a-z`).
    pub fn parse(text: &str) -> Result<Self> {
        let symbols = text
            .bytes()
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                b'a'..=b'z' => Ok(b - b'a' + 10),
                _ => Err(Error::SymbolOutOfRange { symbol: b, size: 36 }),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(symbols)
    }

    /// `symbol` repeated `len` times.
    pub fn constant(symbol: Symbol, len: usize) -> Result<Self> {
        Word::new(alloc::vec![symbol; len])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn check_alphabet(&self, alphabet: Alphabet) -> Result<()> {
        self.0.iter().try_for_each(|&s| alphabet.check(s))
    }

    /// Base-`alphabet` code with the first symbol most significant.
    pub fn code(&self, alphabet: Alphabet) -> u64 {
        let base = u64::from(alphabet.size());
        self.0.iter().fold(0u64, |acc, &s| acc.wrapping_mul(base).wrapping_add(u64::from(s)))
    }

    pub fn from_code(code: u64, len: usize, alphabet: Alphabet) -> Word {
        let base = u64::from(alphabet.size());
        let mut symbols = alloc::vec![0; len];
        let mut rest = code;
        for slot in symbols.iter_mut().rev() {
            *slot = (rest % base) as Symbol;
            rest /= base;
        }
        Word(symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            let c = DIGITS.get(usize::from(s)).copied().unwrap_or(b'?');
            fmt::Write::write_char(f, char::from(c))?;
        }
        Ok(())
    }
}

/// The word `A_n` of the nested construction: `A_1 = 01`, and `A_n` extends
/// `A_{n-1}` by `n * |A_{n-1}|` copies of `0` (n even) or `1` (n odd).
/// `|A_n| = (n+1)!`; only `n <= 10` is materialized.
pub fn word_a(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::ZeroWordIndex);
    }
    if n > 10 {
        return Err(Error::WordTooLong(u64::from(n)));
    }
    let mut symbols = alloc::vec![0, 1];
    for level in 2..=n {
        let fill = if level % 2 == 0 { 0 } else { 1 };
        let extra = level as usize * symbols.len();
        symbols.extend(core::iter::repeat_n(fill, extra));
    }
    Ok(Word(symbols))
}

/// `x_m .. x_{m+|w|-1} = w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cylinder {
    pub word: Word,
    pub position: i64,
}

impl Cylinder {
    pub fn new(word: Word, position: i64) -> Self {
        Cylinder { word, position }
    }

    /// The cylinder of `word` (odd length `2k+1`) centered at the origin.
    pub fn centered(word: Word) -> Self {
        let k = (word.len() / 2) as i64;
        Cylinder { word, position: -k }
    }

    pub fn contains(&self, x: &SymbolicPoint) -> bool {
        self.contains_shifted(x, 0)
    }

    /// Whether `shift(x, g)` lies in the cylinder.
    pub fn contains_shifted(&self, x: &SymbolicPoint, g: i64) -> bool {
        let start = g.saturating_add(self.position);
        self.word.symbols().iter().enumerate().all(|(j, &s)| x.eval(start.saturating_add(j as i64)) == s)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@{}", self.word, self.position)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Exact,
    UpperBound,
}

/// A certified distance `2^-exponent`: either exact, or an upper bound when
/// every probed coordinate agreed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MetricValue {
    pub kind: MetricKind,
    pub exponent: u32,
}

impl MetricValue {
    pub const ONE: MetricValue = MetricValue::exact(0);

    pub const fn exact(exponent: u32) -> Self {
        MetricValue { kind: MetricKind::Exact, exponent }
    }

    pub const fn upper_bound(exponent: u32) -> Self {
        MetricValue { kind: MetricKind::UpperBound, exponent }
    }

    pub fn is_exact(self) -> bool {
        self.kind == MetricKind::Exact
    }

    /// Certified `distance <= 2^-e`.
    pub fn at_most(self, bound: Dyadic) -> bool {
        self.exponent >= bound.0
    }

    /// Certified `distance >= 2^-e`.
    pub fn at_least(self, bound: Dyadic) -> bool {
        self.is_exact() && self.exponent <= bound.0
    }
}

impl Ord for MetricValue {
    /// Orders by the value `2^-exponent`; at equal values an upper bound sorts below an exact value.
    fn cmp(&self, other: &Self) -> Ordering {
        other.exponent.cmp(&self.exponent).then_with(|| {
            let rank = |k: MetricKind| matches!(k, MetricKind::Exact) as u8;
            rank(self.kind).cmp(&rank(other.kind))
        })
    }
}

impl PartialOrd for MetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MetricKind::Exact => write!(f, "{}", Dyadic(self.exponent)),
            MetricKind::UpperBound => write!(f, "<={}", Dyadic(self.exponent)),
        }
    }
}

/// The dyadic rational `2^-e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dyadic(pub u32);

impl Dyadic {
    pub const ONE: Dyadic = Dyadic(0);

    pub fn exponent(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^-{}", self.0)
    }
}

/// How a point was built; rendered into reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Periodic { word: Word, phase: i64 },
    Indicator { set: String },
    Example51,
    WordEnumeration,
    Mutation { base: Box<Provenance>, patches: Vec<(i64, Symbol)> },
    Shift { base: Box<Provenance>, by: i64 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Periodic { word, phase } => write!(f, "periodic({word}, phase {phase})"),
            Provenance::Indicator { set } => write!(f, "indicator({set})"),
            Provenance::Example51 => f.write_str("example51"),
            Provenance::WordEnumeration => f.write_str("word_enumeration"),
            Provenance::Mutation { base, patches } => {
                write!(f, "mutation({base}; ")?;
                for (n, (i, s)) in patches.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{i}:{s}")?;
                }
                f.write_str(")")
            }
            Provenance::Shift { base, by } => write!(f, "shift({base}, {by})"),
        }
    }
}

type Eval = Arc<dyn Fn(i64) -> Symbol + Send + Sync>;

/// A point of the full shift: a deterministic symbol at every integer coordinate.
#[derive(Clone)]
pub struct SymbolicPoint {
    alphabet: Alphabet,
    eval: Eval,
    provenance: Provenance,
}

impl fmt::Debug for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicPoint").field("alphabet", &self.alphabet).field("provenance", &self.provenance).finish()
    }
}

impl SymbolicPoint {
    /// Wraps an arbitrary evaluation function. The function must be pure and
    /// return symbols inside `alphabet`.
    pub fn from_fn<F>(alphabet: Alphabet, provenance: Provenance, eval: F) -> Self
    where
        F: Fn(i64) -> Symbol + Send + Sync + 'static,
    {
        SymbolicPoint { alphabet, eval: Arc::new(eval), provenance }
    }

    /// `eval(i) = word[(i - phase) mod |word|]`.
    pub fn periodic(alphabet: Alphabet, word: &Word, phase: i64) -> Result<Self> {
        word.check_alphabet(alphabet)?;
        let symbols: Vec<Symbol> = word.symbols().to_vec();
        let len = symbols.len() as i128;
        Ok(Self::from_fn(alphabet, Provenance::Periodic { word: word.clone(), phase }, move |i| {
            let at = (i128::from(i) - i128::from(phase)).rem_euclid(len);
            symbols[at as usize]
        }))
    }

    /// The fixed point `s^inf`.
    pub fn constant(alphabet: Alphabet, symbol: Symbol) -> Result<Self> {
        Self::periodic(alphabet, &Word::new(alloc::vec![symbol])?, 0)
    }

    /// The unique binary point carrying `reverse(A_n) A_n` on `-|A_n| .. |A_n|-1` for every `n`.
    pub fn example51() -> Self {
        Self::from_fn(Alphabet::BINARY, Provenance::Example51, example51_symbol)
    }

    /// The binary point `1_S`.
    pub fn indicator(set: IntegerSet) -> Self {
        let description = alloc::format!("{set}");
        Self::from_fn(Alphabet::BINARY, Provenance::Indicator { set: description }, move |i| {
            Symbol::from(set.member(i))
        })
    }

    /// Concatenation of all binary words in length-lex order on `0, 1, 2, ...`;
    /// `0` on negative coordinates.
    pub fn word_enumeration() -> Self {
        Self::from_fn(Alphabet::BINARY, Provenance::WordEnumeration, word_enumeration_symbol)
    }

    /// Overrides finitely many coordinates. The result is asymptotic to `self`.
    pub fn mutate(&self, patches: &[(i64, Symbol)]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for &(i, s) in patches {
            self.alphabet.check(s)?;
            if table.insert(i, s).is_some() {
                return Err(Error::DuplicatePatch(i));
            }
        }
        let base = self.eval.clone();
        Ok(SymbolicPoint {
            alphabet: self.alphabet,
            eval: Arc::new(move |i| table.get(&i).copied().unwrap_or_else(|| base(i))),
            provenance: Provenance::Mutation { base: Box::new(self.provenance.clone()), patches: patches.to_vec() },
        })
    }

    /// `shift(x, g).eval(i) = x.eval(i + g)`.
    pub fn shift(&self, g: i64) -> Self {
        if g == 0 {
            return self.clone();
        }
        let base = self.eval.clone();
        SymbolicPoint {
            alphabet: self.alphabet,
            eval: Arc::new(move |i| base(i.saturating_add(g))),
            provenance: Provenance::Shift { base: Box::new(self.provenance.clone()), by: g },
        }
    }

    #[inline]
    pub fn eval(&self, i: i64) -> Symbol {
        (self.eval)(i)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `x_m .. x_{m+len-1}`.
    pub fn window(&self, m: i64, len: usize) -> Result<Word> {
        if len == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(Word((0..len as i64).map(|j| self.eval(m.saturating_add(j))).collect()))
    }

    /// Code of `window(m, len)` without allocating.
    #[inline]
    pub fn window_code(&self, m: i64, len: usize) -> u64 {
        let base = u64::from(self.alphabet.size());
        (0..len as i64)
            .fold(0u64, |acc, j| acc.wrapping_mul(base).wrapping_add(u64::from(self.eval(m.saturating_add(j)))))
    }

    /// The central word `x_{-k} .. x_k`.
    pub fn central_word(&self, k: u32) -> Word {
        let k = i64::from(k);
        Word((-k..=k).map(|j| self.eval(j)).collect())
    }
}

/// `d(x, y) = 2^-n` with `n` the least `i >= 0` where `x_i != y_i` or `x_-i != y_-i`,
/// probed for `i <= resolution`.
pub fn metric(x: &SymbolicPoint, y: &SymbolicPoint, resolution: u32) -> Result<MetricValue> {
    if x.alphabet != y.alphabet {
        return Err(Error::AlphabetMismatch { left: x.alphabet.0, right: y.alphabet.0 });
    }
    Ok(metric_shifted(x, y, 0, 0, resolution))
}

/// Metric between `shift(x, gx)` and `shift(y, gy)` without building the shifted points.
pub(crate) fn metric_shifted(x: &SymbolicPoint, y: &SymbolicPoint, gx: i64, gy: i64, resolution: u32) -> MetricValue {
    for i in 0..=resolution {
        let i64i = i64::from(i);
        let differs = |j: i64| x.eval(gx.saturating_add(j)) != y.eval(gy.saturating_add(j));
        if differs(i64i) || differs(-i64i) {
            return MetricValue::exact(i);
        }
    }
    MetricValue::upper_bound(resolution + 1)
}

fn example51_symbol(i: i64) -> Symbol {
    // x_{-i} = (A_n)_i (1-indexed), i.e. the mirror of the nonnegative half.
    let at = if i >= 0 { i as u128 } else { (-(i as i128) - 1) as u128 };
    if at < 2 {
        return at as Symbol;
    }
    // Smallest n >= 2 with (n+1)! > at; positions |A_{n-1}| .. |A_n|-1 carry the level-n fill.
    let mut len: u128 = 6;
    let mut n: u128 = 2;
    while len <= at {
        n += 1;
        len *= n + 1;
    }
    (n % 2) as Symbol
}

fn word_enumeration_symbol(i: i64) -> Symbol {
    if i < 0 {
        return 0;
    }
    let mut rest = i as u128;
    let mut len: u32 = 1;
    loop {
        let block = u128::from(len) << len;
        if rest < block {
            let word = rest / u128::from(len);
            let pos = (rest % u128::from(len)) as u32;
            return ((word >> (len - 1 - pos)) & 1) as Symbol;
        }
        rest -= block;
        len += 1;
    }
}
