use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inverted(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// +1 or -1.
    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column of this letter in a coset table with separate inverse columns.
    pub(crate) fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// A freely reduced word in the free group. The empty word is the identity.
///
/// Ordering is shortlex, so maps keyed by words iterate shortest words first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
    let mut out: Vec<Letter> = Vec::new();
    for letter in letters {
        match out.last() {
            Some(&last) if last == letter.inverted() => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    GroupWord { letters: out }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(letter: Letter) -> Self {
        GroupWord { letters: vec![letter] }
    }

    /// `generator^exponent` as a word.
    pub fn power(generator: usize, exponent: i64) -> Self {
        let letter = Letter::new(generator, exponent < 0);
        GroupWord {
            letters: vec![letter; exponent.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverted())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Free product `self * other`, reduced.
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Renders in presentation syntax, e.g. `x^2*y^-1`; the identity is `1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a GroupWord,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let letter = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == letter {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = self
                .names
                .get(letter.generator)
                .map(|s| s.as_ref().to_string())
                .unwrap_or_else(|| format!("g{}", letter.generator));
            let exponent = run as i64 * i64::from(letter.exponent());
            if exponent == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exponent}")?;
            }
            i += run;
        }
        Ok(())
    }
}
