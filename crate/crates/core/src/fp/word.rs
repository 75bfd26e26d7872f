use std::fmt;

use thiserror::Error;

/// Generator `g` (0-based) or its inverse, encoded as `2g` / `2g + 1`. The
/// code doubles as a coset-table column.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeLetter(u32);

impl FreeLetter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        FreeLetter(2 * generator as u32 + inverse as u32)
    }

    pub fn from_code(code: usize) -> Self {
        FreeLetter(code as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inv(self) -> Self {
        FreeLetter(self.0 ^ 1)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for FreeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.generator())?;
        if self.is_inverse() {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<FreeLetter>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("empty factor in `{0}`")]
    EmptyFactor(String),
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = FreeLetter>) -> Self {
        let mut out: Vec<FreeLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![FreeLetter::new(g, false)],
        }
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Removes cancelling first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let mut i = 0;
        let mut j = l.len();
        while j - i >= 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word { letters }
    }

    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for l in &self.letters {
            sums[l.generator()] += l.exponent();
        }
        sums
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == g).count()
    }

    /// Replaces each occurrence of generator `g` by `image` (and `g^-1` by
    /// its inverse), then freely reduces.
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if l.generator() == g {
                let repl = if l.is_inverse() { &inv } else { image };
                out.extend_from_slice(&repl.letters);
            } else {
                out.push(l);
            }
        }
        Word::new(out)
    }

    /// Renames generators through `map` (old index -> new index).
    pub fn renumber(&self, map: &[usize]) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| FreeLetter::new(map[l.generator()], l.is_inverse()))
                .collect(),
        }
    }

    /// Smallest representative among rotations of the word and its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        let inv = w.inverse();
        (0..w.len().max(1))
            .flat_map(|k| [w.rotate(k), inv.rotate(k)])
            .min()
            .unwrap_or_default()
    }

    /// Renders with `*` separators and `^k` for runs, e.g. `a2*a1^-1*b1^2`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses `a2*a1^-1*a3*a4^-1`; `1` or an empty string is the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<Word, WordError> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for factor in text.split('*') {
            if factor.is_empty() {
                return Err(WordError::EmptyFactor(text.clone()));
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: i64 = e
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| WordError::BadExponent(factor.to_string()))?;
                    (name, e)
                }
                None => (factor, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            let l = FreeLetter::new(g, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Word::new(letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.letters).finish()
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = &self.names[l.generator()];
            let e = run as i64 * l.exponent();
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
            i += run;
        }
        Ok(())
    }
}
