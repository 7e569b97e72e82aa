use std::fmt;

/// A word over the generator alphabet `{1..d}`.
pub type Word = Vec<u8>;

/// The monomial `ψ_I ψ_J*` for a creator word `I` and an annihilator word `J`.
///
/// Both words are stored in creator order, so `(I, J)` stands for
/// `ψ_{i1}…ψ_{im} (ψ_{j1}…ψ_{jn})* = ψ_{i1}…ψ_{im} ψ_{jn}*…ψ_{j1}*`.
/// With this convention the only contraction rule is prefix matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    creators: Word,
    annihilators: Word,
}

impl Monomial {
    pub fn new(creators: Word, annihilators: Word) -> Self {
        Self {
            creators,
            annihilators,
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn creators(&self) -> &[u8] {
        &self.creators
    }

    pub fn annihilators(&self) -> &[u8] {
        &self.annihilators
    }

    /// Gauge degree `|I| − |J|`.
    pub fn degree(&self) -> i64 {
        self.creators.len() as i64 - self.annihilators.len() as i64
    }

    /// Annihilator length; the level at which the monomial is already expanded.
    pub fn level(&self) -> usize {
        self.annihilators.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.creators.len() == self.annihilators.len()
    }

    pub fn is_identity(&self) -> bool {
        self.creators.is_empty() && self.annihilators.is_empty()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            creators: self.annihilators.clone(),
            annihilators: self.creators.clone(),
        }
    }

    pub fn max_letter(&self) -> u8 {
        self.creators
            .iter()
            .chain(&self.annihilators)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Right-multiplies by `ψ_W ψ_W*`, i.e. appends `W` to both words.
    pub fn extended(&self, w: &[u8]) -> Self {
        let mut creators = self.creators.clone();
        creators.extend_from_slice(w);
        let mut annihilators = self.annihilators.clone();
        annihilators.extend_from_slice(w);
        Self {
            creators,
            annihilators,
        }
    }

    /// `ψ_i · self`.
    pub fn prepend_creator(&self, letter: u8) -> Self {
        let mut creators = Vec::with_capacity(self.creators.len() + 1);
        creators.push(letter);
        creators.extend_from_slice(&self.creators);
        Self {
            creators,
            annihilators: self.annihilators.clone(),
        }
    }

    /// `self · ψ_i*`.
    pub fn prepend_annihilator(&self, letter: u8) -> Self {
        let mut annihilators = Vec::with_capacity(self.annihilators.len() + 1);
        annihilators.push(letter);
        annihilators.extend_from_slice(&self.annihilators);
        Self {
            creators: self.creators.clone(),
            annihilators,
        }
    }

    /// Fully contracted product `ψ_{I1}ψ_{J1}* · ψ_{I2}ψ_{J2}*`, or `None` when it vanishes.
    pub fn mul(&self, rhs: &Monomial) -> Option<Monomial> {
        let (j1, i2) = (&self.annihilators, &rhs.creators);
        if let Some(rest) = i2.strip_prefix(j1.as_slice()) {
            let mut creators = self.creators.clone();
            creators.extend_from_slice(rest);
            Some(Monomial::new(creators, rhs.annihilators.clone()))
        } else if let Some(rest) = j1.strip_prefix(i2.as_slice()) {
            let mut annihilators = rhs.annihilators.clone();
            annihilators.extend_from_slice(rest);
            Some(Monomial::new(self.creators.clone(), annihilators))
        } else {
            None
        }
    }
}

/// Prints as a product of generators, e.g. `s1 s2 s1* s2*` for `(I, J) = ([1, 2], [2, 1])`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let factors = self
            .creators
            .iter()
            .map(|i| format!("s{}", i))
            .chain(self.annihilators.iter().rev().map(|j| format!("s{}*", j)));
        let text: Vec<String> = factors.collect();
        write!(f, "{}", text.join(" "))
    }
}

/// All words of the given length over `{1..d}`, in lexicographic order.
pub fn words(d: usize, len: usize) -> impl Iterator<Item = Word> {
    let count = d.checked_pow(len as u32).expect("word count overflow");
    (0..count).map(move |mut index| {
        let mut w = vec![0u8; len];
        for slot in w.iter_mut().rev() {
            *slot = (index % d) as u8 + 1;
            index /= d;
        }
        w
    })
}
