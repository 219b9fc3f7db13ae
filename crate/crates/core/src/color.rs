use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Edge color of a Tait-colored cubic graph.
///
/// The derived order `Red < Blue < Green` is used for every deterministic
/// tie-break in the crate (BFS neighbor order, canonical encodings, option
/// table ordering).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
    Green,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Blue, Color::Green];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
            Color::Green => 'g',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::Red),
            'b' => Some(Color::Blue),
            'g' => Some(Color::Green),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Green => "green",
        }
    }

    /// The red/blue swap; green is fixed.
    pub fn swap_red_blue(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
            Color::Green => Color::Green,
        }
    }

    /// The third color, given two distinct ones.
    pub fn third(a: Color, b: Color) -> Color {
        debug_assert_ne!(a, b);
        Color::from_index(3 - a.index() - b.index())
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" | "red" => Ok(Color::Red),
            "b" | "blue" => Ok(Color::Blue),
            "g" | "green" => Ok(Color::Green),
            other => Err(format!("unknown color `{other}`")),
        }
    }
}

/// A finite walk instruction: the sequence of edge colors the writer follows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MoveWord(Vec<Color>);

impl MoveWord {
    /// Longest word accepted by the rule grammar.
    pub const DEFAULT_MAX_LEN: usize = 2;

    pub fn empty() -> Self {
        MoveWord(Vec::new())
    }

    pub fn new(colors: Vec<Color>) -> Self {
        MoveWord(colors)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Color> {
        self.0.last().copied()
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> MoveWord {
        MoveWord(self.0.iter().map(|&c| f(c)).collect())
    }

    /// All words of exactly `len` letters in shortlex order.
    pub fn all_of_len(len: usize) -> Vec<MoveWord> {
        let mut out = vec![MoveWord::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    Color::ALL.iter().map(move |&c| {
                        let mut v = w.0.clone();
                        v.push(c);
                        MoveWord(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Color::from_letter(c).ok_or_else(|| format!("bad color letter `{c}`")))
            .collect::<Result<Vec<_>, _>>()
            .map(MoveWord)
    }
}
