//! One-dimensional reductions of two growing rules, and mechanical checks
//! of the word identities behind their closed forms.
//!
//! * The simple cyclic rule (writer moves red then blue and expands every
//!   vertex it leaves) is described by the type word along the writer's
//!   red/blue cycle, by a global-replacement identity and by an explicit
//!   closed-form state.
//! * The golden rule reduces to a word system `s` over `{A, B}`, which in
//!   turn is driven by the tag system `K` (`x0 -> 01x`, `x1 -> 011x`), a
//!   slow version of the substitution `0 -> 01, 1 -> 011`. The positions of
//!   the ones in the limit word are the Beatty sequence of the golden ratio,
//!   which gives the vertex count in closed form.
//!
//! All golden-ratio arithmetic is exact integer arithmetic.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalog;
use crate::color::{Color, MoveWord};
use crate::graph::{GraphError, SurroundingsType, Trinet, Vertex};
use crate::iso::{rooted_iso, unrooted_iso};
use crate::rule::Rule;
use crate::sim::SystemState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {letter:?} is not in the alphabet {alphabet}")]
    BadLetter { letter: char, alphabet: Alphabet },
    #[error("operation needs a non-empty word")]
    EmptyWord,
    #[error("no rewrite case applies to {0}")]
    NoCase(String),
    #[error("the red/blue walk from vertex {0} does not return")]
    NoCycle(Vertex),
    #[error("vertex {0} has no surroundings type")]
    Untyped(Vertex),
    #[error("closed form is defined from time 2 on, got {0}")]
    BadT(u64),
    #[error("closed-form state is not a trinet: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Alphabet {
    /// Surroundings types `r`, `b`, `g`, `0`.
    Types,
    /// `A` and `B`.
    Ab,
    /// `0` and `1`.
    Binary,
}

impl Alphabet {
    pub fn letters(self) -> &'static [u8] {
        match self {
            Alphabet::Types => b"rbg0",
            Alphabet::Ab => b"AB",
            Alphabet::Binary => b"01",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", String::from_utf8_lossy(self.letters()))
    }
}

/// A finite word over one of the fixed alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, text: &str) -> Result<Word, WordError> {
        Word::from_bytes(alphabet, text.as_bytes().to_vec())
    }

    fn from_bytes(alphabet: Alphabet, letters: Vec<u8>) -> Result<Word, WordError> {
        if let Some(&bad) = letters.iter().find(|c| !alphabet.letters().contains(c)) {
            return Err(WordError::BadLetter { letter: bad as char, alphabet });
        }
        Ok(Word { alphabet, letters })
    }

    fn trusted(alphabet: Alphabet, letters: Vec<u8>) -> Word {
        debug_assert!(letters.iter().all(|c| alphabet.letters().contains(c)));
        Word { alphabet, letters }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.letters
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.letters).expect("alphabets are ASCII")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::trusted(self.alphabet, letters)
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Word {
        Word::trusted(self.alphabet, self.letters.repeat(k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn ab(text: &str) -> Word {
    Word::trusted(Alphabet::Ab, text.as_bytes().to_vec())
}

fn bin(text: &str) -> Word {
    Word::trusted(Alphabet::Binary, text.as_bytes().to_vec())
}

/// Exact evaluation of `⌊nφ⌋` and friends, `φ = (1 + √5) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GoldenInt(pub u64);

impl GoldenInt {
    /// `⌊nφ⌋ = (n + ⌊√(5n²)⌋) / 2`, exact because `√5·n` is irrational for
    /// `n ≥ 1`.
    pub fn floor_phi(self) -> u64 {
        let n = self.0 as u128;
        ((n + (5 * n * n).isqrt()) / 2) as u64
    }

    /// `⌈n / φ²⌉ = ⌈n(2 − φ)⌉ = 2n − ⌊nφ⌋`.
    pub fn ceil_over_phi_squared(self) -> u64 {
        if self.0 == 0 {
            return 0;
        }
        2 * self.0 - self.floor_phi()
    }
}

/// Outcome of one mechanical check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl CheckReport {
    fn new(check: &str, range: String, failure: Option<String>) -> Self {
        CheckReport { check: check.to_string(), range, passed: failure.is_none(), counterexample: failure }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} range={} result={}",
            self.check,
            self.range,
            if self.passed { "pass" } else { "fail" }
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " first_counterexample={c}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The simple cyclic rule

/// Type word of the red/blue cycle through the writer, read from the writer
/// by alternating red and blue steps.
pub fn jseq(state: &SystemState) -> Result<Word, WordError> {
    let g = &state.graph;
    let start = state.writer;
    let mut letters = Vec::new();
    let mut v = start;
    for k in 0..2 * g.vertex_count() + 2 {
        let ty = g.surroundings_type(v).map_err(|_| WordError::Untyped(v))?;
        letters.push(ty.letter() as u8);
        v = g.neighbor(v, if k % 2 == 0 { Color::Red } else { Color::Blue });
        if k % 2 == 1 && v == start {
            return Ok(Word::trusted(Alphabet::Types, letters));
        }
    }
    Err(WordError::NoCycle(start))
}

/// Checks `J(2T) = (bgr0)^(T+1)` and `J(2T+1) = 00(bgr0)^(T+1)` for
/// `1 ≤ T ≤ tmax` under `rule` started on the cube.
pub fn cycle_word_check(rule: &Rule, tmax: u64) -> CheckReport {
    let unit = Word::trusted(Alphabet::Types, b"bgr0".to_vec());
    let zz = Word::trusted(Alphabet::Types, b"00".to_vec());
    let mut s = SystemState::cube();
    s.run(rule, 2);
    let mut failure = None;
    'outer: for t in 1..=tmax {
        let even = unit.power(t as usize + 1);
        for want in [even.clone(), zz.concat(&even)] {
            match jseq(&s) {
                Ok(j) if j == want => {}
                Ok(j) => {
                    failure = Some(format!("t={}: got {} expected {}", s.time, j, want));
                    break 'outer;
                }
                Err(e) => {
                    failure = Some(format!("t={}: {e}", s.time));
                    break 'outer;
                }
            }
            s.step(rule);
        }
    }
    CheckReport::new("cycle-word", format!("T=1..{tmax}"), failure)
}

/// Expands every vertex selected by `pred`, with the selection made on
/// the input graph. Existing ids are kept; each expansion appends two.
pub fn simultaneous_replace(g: &Trinet, pred: impl Fn(&Trinet, Vertex) -> bool) -> Trinet {
    let chosen: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| pred(g, v)).collect();
    let mut out = g.clone();
    for v in chosen {
        out.expand(v);
    }
    out
}

/// Predicate selecting vertices whose surroundings type is in `types`.
pub fn of_types(types: &[SurroundingsType]) -> impl Fn(&Trinet, Vertex) -> bool + '_ {
    move |g, v| g.surroundings_type(v).is_ok_and(|t| types.contains(&t))
}

/// Checks that expanding every vertex selected by `pred` in the graph at
/// time `2^n − 2` gives the graph at time `2^(n+1) − 2`, for `2 ≤ n ≤ nmax`.
pub fn global_replacement_check(
    rule: &Rule,
    nmax: u32,
    pred: impl Fn(&Trinet, Vertex) -> bool,
) -> CheckReport {
    let mut s = SystemState::cube();
    s.run(rule, 2);
    let mut failure = None;
    for n in 2..=nmax {
        let replaced = simultaneous_replace(&s.graph, &pred);
        s.run(rule, (1u64 << (n + 1)) - 2 - s.time);
        if !unrooted_iso(&replaced, &s.graph) {
            failure = Some(format!("n={n}: replacement has {} vertices, t={} has {}", replaced.vertex_count(), s.time, s.vertex_count()));
            break;
        }
    }
    CheckReport::new("global-replacement", format!("n=2..{nmax}"), failure)
}

/// `min{x + 2y, 2x}`.
pub fn zeta(x: u64, y: u64) -> u64 {
    (x + 2 * y).min(2 * x)
}

/// `(n, t)` with `n` the largest `m` such that `2^m − 2 ≤ time` and
/// `t = time − (2^n − 2)`.
pub fn doubling_phase(time: u64) -> (u32, u64) {
    let n = (time + 2).ilog2();
    (n, time + 2 - (1u64 << n))
}

/// The explicit state of the simple cyclic rule at `time ≥ 2`. Labels
/// `−4, −3, …` are stored as ids `0, 1, …`.
pub fn hstate(time: u64) -> Result<SystemState, WordError> {
    if time < 2 {
        return Err(WordError::BadT(time));
    }
    let (n, t) = doubling_phase(time);
    let m = (1i64 << (n + 1)) + 2 * t as i64;
    let id = |label: i64| (label + 4) as Vertex;
    let z = |x: i64| zeta(x as u64, t) as i64;
    let mut edges = Vec::new();
    let mut push = |a: i64, b: i64, c: Color| edges.push((id(a), id(b), c));
    push(-1, -4, Color::Red);
    push(-3, -2, Color::Red);
    for i in (1..m).step_by(2) {
        push(i, (i + 1) % m, Color::Red);
    }
    push(-4, -3, Color::Blue);
    push(-2, -1, Color::Blue);
    for i in (0..m - 1).step_by(2) {
        push(i, i + 1, Color::Blue);
    }
    let p = |k: u32| 1i64 << k;
    push(-4, 0, Color::Green);
    push(-3, z(p(n - 1)), Color::Green);
    push(-2, z(p(n)), Color::Green);
    push(-1, z(p(n + 1) - p(n - 1)), Color::Green);
    for alpha in 0..n - 1 {
        for beta in 0..p(n - alpha - 1) {
            let a = p(alpha + 2) * beta + p(alpha);
            push(z(a), z(a + p(alpha + 1)), Color::Green);
        }
    }
    for k in 0..t as i64 {
        push(4 * k + 1, 4 * k + 3, Color::Green);
    }
    let graph = Trinet::from_edges(id(m), edges)?;
    let writer = id(4 * t as i64 + 1);
    Ok(SystemState { graph, writer, time })
}

/// Checks that the closed-form state matches the simulated state,
/// writer included, for `2 ≤ T ≤ tmax`.
pub fn closed_form_check(rule: &Rule, tmax: u64) -> CheckReport {
    closed_form_check_shifted(rule, tmax, 0)
}

fn closed_form_check_shifted(rule: &Rule, tmax: u64, writer_shift: usize) -> CheckReport {
    let mut s = SystemState::cube();
    s.run(rule, 2);
    let mut failure = None;
    for time in 2..=tmax {
        let ok = match hstate(time) {
            Ok(h) => {
                let w = (h.writer + writer_shift) % h.vertex_count();
                rooted_iso(&h.graph, w, &s.graph, s.writer)
            }
            Err(_) => false,
        };
        if !ok {
            failure = Some(format!("T={time}"));
            break;
        }
        s.step(rule);
    }
    CheckReport::new("closed-form-state", format!("T=2..{tmax}"), failure)
}

// ---------------------------------------------------------------------------
// Word systems of the golden rule

/// One step of `s`: `AxA -> xABA`, `AxB -> BAx`, `BxA -> ABAx`.
pub fn s_step(w: &Word) -> Result<Word, WordError> {
    let l = &w.letters;
    if l.len() < 2 {
        return Err(WordError::NoCase(w.to_string()));
    }
    let x = &l[1..l.len() - 1];
    let out = match (l[0], l[l.len() - 1]) {
        (b'A', b'A') => [x, b"ABA"].concat(),
        (b'A', b'B') => [b"BA", x].concat(),
        (b'B', b'A') => [b"ABA", x].concat(),
        _ => return Err(WordError::NoCase(w.to_string())),
    };
    Ok(Word::trusted(Alphabet::Ab, out))
}

/// `s(t)`, starting from `s(0) = AA`.
pub fn s_word(t: u64) -> Word {
    let mut w = ab("AA");
    for _ in 0..t {
        w = s_step(&w).expect("s never starts and ends with B");
    }
    w
}

/// One step of the tag system: `x0 -> 01x`, `x1 -> 011x`.
pub fn tag_step(k: &Word) -> Result<Word, WordError> {
    let (&last, x) = k.letters.split_last().ok_or(WordError::EmptyWord)?;
    let head: &[u8] = if last == b'0' { b"01" } else { b"011" };
    Ok(Word::trusted(Alphabet::Binary, [head, x].concat()))
}

/// `K(t)`, starting from `K(0) = 0`.
pub fn k_word(t: u64) -> Word {
    let mut k = bin("0");
    for _ in 0..t {
        k = tag_step(&k).expect("K is never empty");
    }
    k
}

/// `last(K(0)) last(K(1)) …`, iterated literally on a deque.
pub fn tag_last_letters(count: usize) -> Vec<u8> {
    let mut k: VecDeque<u8> = VecDeque::from([b'0']);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let last = k.pop_back().expect("K is never empty");
        out.push(last);
        if last == b'1' {
            k.push_front(b'1');
        }
        k.push_front(b'1');
        k.push_front(b'0');
    }
    out
}

fn omega(w: &Word) -> Word {
    let mut out = Vec::with_capacity(2 * w.len());
    for &c in &w.letters {
        out.extend_from_slice(if c == b'0' { b"01" } else { b"011" });
    }
    Word::trusted(Alphabet::Binary, out)
}

/// `Z(n)`: `n` applications of `0 -> 01, 1 -> 011` to `0`.
pub fn subst_z(n: u32) -> Word {
    let mut w = bin("0");
    for _ in 0..n {
        w = omega(&w);
    }
    w
}

/// `0 -> AB`, `1 -> A`.
pub fn mu(w: &Word) -> Word {
    let mut out = Vec::with_capacity(2 * w.len());
    for &c in &w.letters {
        out.extend_from_slice(if c == b'0' { b"AB" } else { b"A" });
    }
    Word::trusted(Alphabet::Ab, out)
}

/// Flips the first and the last letter of a binary word.
pub fn tog(w: &Word) -> Result<Word, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let flip = |c: u8| if c == b'0' { b'1' } else { b'0' };
    let mut out = w.letters.clone();
    let n = out.len();
    out[0] = flip(out[0]);
    out[n - 1] = flip(out[n - 1]);
    Ok(Word::trusted(Alphabet::Binary, out))
}

pub fn rev(w: &Word) -> Word {
    let mut out = w.letters.clone();
    out.reverse();
    Word::trusted(w.alphabet, out)
}

pub fn last(w: &Word) -> Result<u8, WordError> {
    w.letters.last().copied().ok_or(WordError::EmptyWord)
}

/// Drops the leftmost letter.
pub fn drop_left(w: &Word) -> Word {
    Word::trusted(w.alphabet, w.letters.get(1..).unwrap_or_default().to_vec())
}

/// `last(K(i))` in closed form: `⌊(i+1)φ⌋ − ⌊iφ⌋ − 1`.
pub fn last_k(i: u64) -> u8 {
    (GoldenInt(i + 1).floor_phi() - GoldenInt(i).floor_phi() - 1) as u8
}

/// The `s`-time at which `K(T)` is visible in `s`:
/// `2 + 2T + 2·#{i < T : last(K(i)) = 1}`. The ones of `last(K(·))` sit at
/// `⌊kφ⌋`, `k ≥ 1`, so the count is `⌊Tφ⌋ − T`.
pub fn gamma(t: u64) -> u64 {
    2 + 2 * GoldenInt(t).floor_phi()
}

/// Co-iterates `s` and `K` and checks, for `T ≤ tmax`,
/// `s(γ) = Bμ(K)A`, `s(γ+1) = ABAμ(K)` and, when `last(K) = 1`,
/// `s(γ+2) = BAμ(K)BA`, `s(γ+3) = ABAAμ(K)B`.
pub fn word_system_check(tmax: u64) -> CheckReport {
    let mut s = ab("AA");
    let mut time = 0u64;
    let mut k = bin("0");
    let mut failure = None;
    'outer: for big_t in 0..=tmax {
        let g = gamma(big_t);
        let m = mu(&k);
        let mut wants = vec![ab("B").concat(&m).concat(&ab("A")), ab("ABA").concat(&m)];
        if last(&k) == Ok(b'1') {
            wants.push(ab("BA").concat(&m).concat(&ab("BA")));
            wants.push(ab("ABAA").concat(&m).concat(&ab("B")));
        }
        for (offset, want) in wants.iter().enumerate() {
            while time < g + offset as u64 {
                match s_step(&s) {
                    Ok(next) => s = next,
                    Err(e) => {
                        failure = Some(format!("s({time}): {e}"));
                        break 'outer;
                    }
                }
                time += 1;
            }
            if s != *want {
                failure = Some(format!("T={big_t}: s(gamma+{offset}) = {s}, expected {want}"));
                break 'outer;
            }
        }
        k = tag_step(&k).expect("K is never empty");
    }
    CheckReport::new("word-system", format!("T=0..{tmax}"), failure)
}

/// Checks `Z(n+1) = Z(n)Z(n)Z(n−1)…Z(1)1` for `1 ≤ n ≤ nmax`.
pub fn concatenation_check(nmax: u32) -> CheckReport {
    let zs: Vec<Word> = (0..=nmax + 1).map(subst_z).collect();
    let failure = (1..=nmax).find_map(|n| {
        let mut rhs = zs[n as usize].clone();
        for j in (1..=n).rev() {
            rhs = rhs.concat(&zs[j as usize]);
        }
        rhs = rhs.concat(&bin("1"));
        (rhs != zs[n as usize + 1]).then(|| format!("n={n}"))
    });
    CheckReport::new("substitution-concatenation", format!("n=1..{nmax}"), failure)
}

/// Checks `tog(a1)…tog(am) = L(a1)a2…am0` for the given sequences of
/// blocks from `{01, 011}`.
pub fn toggle_check(sequences: &[Vec<bool>]) -> CheckReport {
    let failure = sequences.iter().enumerate().find_map(|(idx, seq)| {
        let blocks: Vec<Word> = seq.iter().map(|&long| bin(if long { "011" } else { "01" })).collect();
        let (first, rest) = blocks.split_first()?;
        let mut lhs = bin("");
        for b in &blocks {
            lhs = lhs.concat(&tog(b).ok()?);
        }
        let mut rhs = drop_left(first);
        for b in rest {
            rhs = rhs.concat(b);
        }
        rhs = rhs.concat(&bin("0"));
        (lhs != rhs).then(|| format!("sequence {idx}: {lhs} vs {rhs}"))
    });
    CheckReport::new("toggle-concatenation", format!("{} sequences", sequences.len()), failure)
}

/// `count` seeded random block sequences of 1 to 30 blocks each, for
/// [`toggle_check`].
pub fn random_block_sequences(count: usize, seed: u64) -> Vec<Vec<bool>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=30);
            (0..len).map(|_| rng.gen()).collect()
        })
        .collect()
}

/// Checks `tog(Z(n)) = rev(Z(n))`, `Z(n)_0 = 0` and `last(Z(n)) = 1` for
/// `1 ≤ n ≤ nmax`.
pub fn toggle_reverse_check(nmax: u32) -> CheckReport {
    let failure = (1..=nmax).find_map(|n| {
        let z = subst_z(n);
        let ok = tog(&z).ok() == Some(rev(&z)) && z.letters[0] == b'0' && last(&z) == Ok(b'1');
        (!ok).then(|| format!("n={n}"))
    });
    CheckReport::new("toggle-reverse", format!("n=1..{nmax}"), failure)
}

/// Checks that `last(K(i))` from the literal tag system, the prefix of the
/// limit of `Z(n)` and `⌊(i+1)φ⌋ − ⌊iφ⌋ − 1` agree for `i ≤ imax`.
pub fn last_letter_check(imax: u64) -> CheckReport {
    let count = imax as usize + 1;
    let tag = tag_last_letters(count);
    let mut n = 0;
    while subst_z(n).len() < count {
        n += 1;
    }
    let z = subst_z(n);
    let failure = (0..count).find_map(|i| {
        let closed = b'0' + last_k(i as u64);
        (tag[i] != z.letters[i] || tag[i] != closed).then(|| {
            format!("i={i}: tag {} limit {} closed form {}", tag[i] as char, z.letters[i] as char, closed as char)
        })
    });
    CheckReport::new("last-letter", format!("i=0..{imax}"), failure)
}

/// Checks that `last(K(0)) last(K(1)) …` is `rev(Z(0)) rev(Z(1)) …` over
/// its first `count` letters.
pub fn reversed_blocks_check(count: usize) -> CheckReport {
    let tag = tag_last_letters(count);
    let mut blocks = Vec::new();
    let mut n = 0;
    while blocks.len() < count {
        blocks.extend(rev(&subst_z(n)).letters);
        n += 1;
    }
    let failure = (0..count).find(|&i| tag[i] != blocks[i]).map(|i| format!("i={i}"));
    CheckReport::new("reversed-blocks", format!("first {count} letters"), failure)
}

/// Vertex count of the golden rule at time `t`:
/// `8 + 2⌈⌊t/2⌋/φ²⌉ + 2⌊(t+1)/2⌋`.
pub fn golden_count(t: u64) -> u64 {
    8 + 2 * GoldenInt(t / 2).ceil_over_phi_squared() + 2 * t.div_ceil(2)
}

/// Surroundings type of the golden rule's writer at time `t`: `b` for
/// even `t > 0`; `0` for `t ∈ {0, 1}` and for `t = 3 + 2⌊(n+1)φ⌋ + 2n`;
/// `r` otherwise.
pub fn golden_type(t: u64) -> SurroundingsType {
    if t <= 1 {
        return SurroundingsType::Zero;
    }
    if t % 2 == 0 {
        return SurroundingsType::Blue;
    }
    // t = 3 + 2⌊kφ⌋ + 2(k−1) = 1 + 2⌊kφ²⌋ for some k ≥ 1, and ⌊kφ²⌋ = ⌊kφ⌋ + k
    // is strictly increasing in k, so a binary search finds k.
    let target = (t - 1) / 2;
    let f = |k: u64| GoldenInt(k).floor_phi() + k;
    let (mut lo, mut hi) = (1u64, target + 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if f(mid) < target {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if f(lo) == target {
        SurroundingsType::Zero
    } else {
        SurroundingsType::Red
    }
}

/// `8 + 2·#{i < t : type b} + 2·#{i < t : type 0}` with the types from
/// [`golden_type`].
pub fn golden_count_by_types(t: u64) -> u64 {
    8 + 2 * (0..t).filter(|&i| golden_type(i) != SurroundingsType::Red).count() as u64
}

/// Compares the closed form with the type-counting decomposition for
/// `t ≤ tmax`.
pub fn golden_count_check(tmax: u64) -> CheckReport {
    let mut by_types = 8;
    let failure = (0..=tmax).find_map(|t| {
        let closed = golden_count(t);
        let out = (closed != by_types).then(|| format!("t={t}: closed form {closed}, by types {by_types}"));
        if golden_type(t) != SurroundingsType::Red {
            by_types += 2;
        }
        out
    });
    CheckReport::new("golden-count", format!("t=0..{tmax}"), failure)
}

/// Simulates `rule` from the cube and compares its vertex counts and
/// writer types with [`golden_count`] and [`golden_type`].
pub fn golden_rule_check(rule: &Rule, tmax: u64) -> CheckReport {
    let mut s = SystemState::cube();
    let mut failure = None;
    for t in 0..=tmax {
        let n = s.vertex_count() as u64;
        let ty = s.writer_type().ok();
        if n != golden_count(t) || ty != Some(golden_type(t)) {
            failure = Some(format!("t={t}: {n} vertices, writer type {ty:?}"));
            break;
        }
        s.step(rule);
    }
    CheckReport::new("golden-rule-simulation", format!("t=0..{tmax}"), failure)
}

// ---------------------------------------------------------------------------
// Bouncing rule: exploratory global-replacement check

/// Which pairs of times the replacement is tested between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BounceTimes {
    /// From `2^(n+2) + n − 1` to `2^(n+3) + n`.
    Body,
    /// Consecutive terms of `2^(n+2) − n − 1`.
    Caption,
}

impl BounceTimes {
    pub fn pair(self, n: u32) -> (u64, u64) {
        let n64 = n as u64;
        match self {
            BounceTimes::Body => ((1 << (n + 2)) + n64 - 1, (1 << (n + 3)) + n64),
            BounceTimes::Caption => ((1 << (n + 2)) - n64 - 1, (1 << (n + 3)) - n64 - 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BounceRow {
    pub times: BounceTimes,
    pub n: u32,
    pub from: u64,
    pub to: u64,
    pub replaced_vertices: usize,
    pub target_vertices: usize,
    pub holds: bool,
}

/// Vertices whose neighbors are not interlinked by an edge of a `track`
/// color, excluding the outer face: any vertex on an alternating cycle of
/// the two track colors with only four vertices.
pub fn bounce_predicate(track: [Color; 2]) -> impl Fn(&Trinet, Vertex) -> bool {
    move |g, v| {
        let linked_by_track = match g.surroundings_type(v) {
            Ok(t) => t.color().is_some_and(|c| track.contains(&c)),
            Err(_) => true,
        };
        let on_square = g.walk(v, &MoveWord::new(vec![track[0], track[1], track[0], track[1]])) == v;
        !linked_by_track && !on_square
    }
}

/// For both time readings and `0 ≤ n ≤ nmax`, tests whether expanding the
/// vertices selected by `pred` at the earlier time gives the graph at the
/// later one. Report only.
pub fn bounce_replacement_check(
    rule: &Rule,
    nmax: u32,
    pred: impl Fn(&Trinet, Vertex) -> bool,
) -> Vec<BounceRow> {
    let mut rows = Vec::new();
    for times in [BounceTimes::Body, BounceTimes::Caption] {
        for n in 0..=nmax {
            let (from, to) = times.pair(n);
            let mut s = SystemState::cube();
            s.run(rule, from);
            let replaced = simultaneous_replace(&s.graph, &pred);
            s.run(rule, to - from);
            rows.push(BounceRow {
                times,
                n,
                from,
                to,
                replaced_vertices: replaced.vertex_count(),
                target_vertices: s.vertex_count(),
                holds: unrooted_iso(&replaced, &s.graph),
            });
        }
    }
    rows
}

/// Convenience: the named simple cyclic rule from the catalog.
pub fn simple_cyclic_rule() -> Rule {
    catalog::by_name("simple-cyclic").expect("catalog entry").rule()
}

/// Convenience: the named golden rule from the catalog.
pub fn golden_rule() -> Rule {
    catalog::by_name("golden").expect("catalog entry").rule()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::parse_rule;
    use num_rational::Ratio;

    fn types(s: &str) -> Word {
        Word::new(Alphabet::Types, s).unwrap()
    }

    #[test]
    fn words_check_their_alphabet() {
        assert!(Word::new(Alphabet::Ab, "ABBA").is_ok());
        assert_eq!(
            Word::new(Alphabet::Binary, "012"),
            Err(WordError::BadLetter { letter: '2', alphabet: Alphabet::Binary })
        );
    }

    #[test]
    fn cycle_words_of_the_simple_rule() {
        let rule = simple_cyclic_rule();
        assert_eq!(jseq(&SystemState::cube()).unwrap(), types("0000"));
        let mut s = SystemState::cube();
        s.run(&rule, 2);
        assert_eq!(jseq(&s).unwrap(), types("bgr0bgr0"));
        s.step(&rule);
        assert_eq!(jseq(&s).unwrap(), types("00bgr0bgr0"));
        assert!(cycle_word_check(&rule, 1).passed);
        assert!(cycle_word_check(&rule, 60).passed);
        let perturbed = parse_rule("0 -> replace move rb; b -> replace move r").unwrap();
        assert!(!cycle_word_check(&perturbed, 60).passed);
    }

    #[test]
    fn replacement_identity() {
        let rule = simple_cyclic_rule();
        let mut s = SystemState::cube();
        s.run(&rule, 2);
        let same = simultaneous_replace(&s.graph, |_, _| false);
        assert_eq!(same, s.graph);
        let rb = [SurroundingsType::Red, SurroundingsType::Blue];
        let r = simultaneous_replace(&s.graph, of_types(&rb));
        let matches = (0..s.vertex_count()).filter(|&v| of_types(&rb)(&s.graph, v)).count();
        assert_eq!(r.vertex_count(), s.vertex_count() + 2 * matches);
        let mut s6 = s.clone();
        s6.run(&rule, 4);
        assert!(unrooted_iso(&r, &s6.graph));
        assert!(global_replacement_check(&rule, 6, of_types(&rb)).passed);
        assert!(!global_replacement_check(&rule, 3, of_types(&[SurroundingsType::Green])).passed);
    }

    #[test]
    fn closed_form_state() {
        assert_eq!(zeta(3, 2), 6);
        assert_eq!(doubling_phase(2), (2, 0));
        assert_eq!(doubling_phase(5), (2, 3));
        assert_eq!(doubling_phase(6), (3, 0));
        let h2 = hstate(2).unwrap();
        assert_eq!((h2.vertex_count(), h2.writer), (12, 1 + 4));
        let h3 = hstate(3).unwrap();
        assert_eq!((h3.vertex_count(), h3.writer), (14, 5 + 4));
        assert_eq!(hstate(1), Err(WordError::BadT(1)));
        for t in 2..200 {
            assert_eq!(hstate(t).unwrap().vertex_count() as u64, 8 + 2 * t);
        }
        let rule = simple_cyclic_rule();
        assert!(closed_form_check(&rule, 100).passed);
        assert!(!closed_form_check_shifted(&rule, 100, 1).passed);
    }

    #[test]
    fn s_and_k_listings() {
        let listing: Vec<String> = (0..4).map(|t| s_word(t).to_string()).collect();
        assert_eq!(listing, ["AA", "ABA", "BABA", "ABAAB"]);
        assert_eq!(s_step(&ab("BB")), Err(WordError::NoCase("BB".into())));
        let w = ab("ABAB");
        assert_eq!(s_step(&w).unwrap().len(), w.len());
        let ks: Vec<String> = (0..4).map(|t| k_word(t).to_string()).collect();
        assert_eq!(ks, ["0", "01", "0110", "01011"]);
        assert_eq!(tag_step(&bin("")), Err(WordError::EmptyWord));
        let zs: Vec<String> = (0..4).map(|n| subst_z(n).to_string()).collect();
        assert_eq!(zs, ["0", "01", "01011", "0101101011011"]);
        let lasts: Vec<u8> = (0..5).map(|t| last(&k_word(t)).unwrap() - b'0').collect();
        assert_eq!(lasts, [0, 1, 0, 1, 1]);
        assert_eq!(tag_last_letters(5), b"01011");
    }

    #[test]
    fn word_utilities() {
        assert_eq!(mu(&bin("01")), ab("ABA"));
        assert_eq!(tog(&bin("01")).unwrap(), bin("10"));
        assert_eq!(tog(&bin("01")).unwrap(), drop_left(&bin("01")).concat(&bin("0")));
        assert_eq!(tog(&bin("")), Err(WordError::EmptyWord));
        assert_eq!(last(&bin("")), Err(WordError::EmptyWord));
        let w = bin("0010111");
        assert_eq!(rev(&rev(&w)), w);
        assert_eq!(drop_left(&bin("")), bin(""));
    }

    #[test]
    fn golden_floor_matches_rational_bounds() {
        // φ lies strictly between consecutive Fibonacci ratios F(k+1)/F(k).
        let mut fib = vec![1i128, 1];
        while fib.len() < 80 {
            let n = fib.len();
            fib.push(fib[n - 1] + fib[n - 2]);
        }
        let (a, b) = (Ratio::new(fib[79], fib[78]), Ratio::new(fib[78], fib[77]));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        for m in 0..20_000i128 {
            let (l, h) = (lo * m, hi * m);
            assert_eq!(l.floor(), h.floor(), "interval too wide at m={m}");
            assert_eq!(GoldenInt(m as u64).floor_phi() as i128, l.floor().to_integer());
            let two_minus = |r: Ratio<i128>| Ratio::from_integer(2 * m) - r;
            assert_eq!(two_minus(h).ceil(), two_minus(l).ceil());
            assert_eq!(GoldenInt(m as u64).ceil_over_phi_squared() as i128, two_minus(l).ceil().to_integer());
        }
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(0), 2);
        assert_eq!(gamma(1), 4);
        let lasts = tag_last_letters(10_001);
        let mut literal = 2;
        for t in 0..=10_000u64 {
            assert_eq!(gamma(t), literal, "T={t}");
            literal += if lasts[t as usize] == b'1' { 4 } else { 2 };
        }
    }

    #[test]
    fn word_identity_checks_pass() {
        assert!(word_system_check(300).passed);
        assert!(concatenation_check(12).passed);
        assert!(toggle_reverse_check(12).passed);
        assert!(last_letter_check(20_000).passed);
        assert!(reversed_blocks_check(20_000).passed);
        let seqs = vec![vec![false], vec![true], vec![false, true, true, false], vec![true, true]];
        assert!(toggle_check(&seqs).passed);
    }

    #[test]
    fn ones_of_the_limit_word() {
        let z = subst_z(8);
        let ones: Vec<usize> = (0..20).filter(|&i| z.as_bytes()[i] == b'1').take(5).collect();
        assert_eq!(ones, [1, 3, 4, 6, 8]);
        let beatty: Vec<u64> = (1..=5).map(|k| GoldenInt(k).floor_phi()).collect();
        assert_eq!(beatty, [1, 3, 4, 6, 8]);
    }

    #[test]
    fn golden_count_and_types() {
        assert_eq!([golden_count(0), golden_count(1), golden_count(2)], [8, 10, 12]);
        for t in 1..2000 {
            let d = golden_count(t) - golden_count(t - 1);
            assert!(d == 0 || d == 2);
        }
        assert_eq!(golden_type(0), SurroundingsType::Zero);
        assert_eq!(golden_type(2), SurroundingsType::Blue);
        let zeros: Vec<u64> = (2..10_000).filter(|&t| golden_type(t) == SurroundingsType::Zero).collect();
        let formula: Vec<u64> = (0..)
            .map(|n| 3 + 2 * GoldenInt(n + 1).floor_phi() + 2 * n)
            .take_while(|&h| h < 10_000)
            .collect();
        assert_eq!(zeros, formula);
        assert!(golden_count_check(10_000).passed);
        assert_eq!(golden_count_by_types(500), golden_count(500));
    }

    #[test]
    fn golden_rule_follows_closed_form() {
        assert!(golden_rule_check(&golden_rule(), 2000).passed);
        assert!(!golden_rule_check(&simple_cyclic_rule(), 100).passed);
    }

    #[test]
    fn bounce_check_reports_both_readings() {
        let rule = catalog::by_name("bouncing").unwrap().rule();
        let rows = bounce_replacement_check(&rule, 2, |_, _| false);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().any(|r| r.times == BounceTimes::Caption));
        assert!(rows.iter().all(|r| !r.holds));
        assert_eq!(BounceTimes::Body.pair(0), (3, 8));
        let rows = bounce_replacement_check(&rule, 4, bounce_predicate([Color::Red, Color::Green]));
        for r in &rows {
            assert_eq!(r.holds, r.times == BounceTimes::Body, "{r:?}");
        }
        assert_eq!(BounceTimes::Caption.pair(0), (3, 6));
    }
}
