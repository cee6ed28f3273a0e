use std::cmp::Ordering;
use std::fmt;

/// Most points a [`Perm`] can act on.
pub const MAX_PERM_DEGREE: usize = 8;

/// Canonically encoded group element.
///
/// Equal group elements always have identical encodings, and the derived
/// ordering is the canonical total order used to sort sets and break ties.
/// Each [`GroupSpec`](super::GroupSpec) variant uses exactly one encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Residue tuple for cyclic groups (one entry) and products of cyclic groups.
    Residues(Vec<u64>),
    /// `r^rot s^reflect` in the dihedral group of order `2n`.
    Dihedral { rot: u64, reflect: bool },
    Perm(Perm),
    /// Row-major 2x2 matrix `[a, b, c, d]` with entries reduced mod p.
    Matrix([u32; 4]),
    Word(Word),
}

/// Permutation of `{0, .., n-1}` in one-line form.
///
/// Composition applies the right factor first: `(a * b)(i) = a(b(i))`.
/// Displayed 1-based, so the transposition swapping the first two points of
/// three is `[2,1,3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_PERM_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_PERM_DEGREE);
        let mut img = [0u8; MAX_PERM_DEGREE];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// Builds from 0-based images; `None` unless the images form a bijection.
    pub fn from_images(images: &[usize]) -> Option<Perm> {
        let n = images.len();
        if n > MAX_PERM_DEGREE {
            return None;
        }
        let mut seen = [false; MAX_PERM_DEGREE];
        let mut img = [0u8; MAX_PERM_DEGREE];
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
            img[i] = x as u8;
        }
        Some(Perm { n: n as u8, img })
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn compose(&self, right: &Perm) -> Perm {
        debug_assert_eq!(self.n, right.n);
        let mut img = [0u8; MAX_PERM_DEGREE];
        for (i, slot) in img.iter_mut().enumerate().take(self.n as usize) {
            *slot = self.img[right.img[i] as usize];
        }
        Perm { n: self.n, img }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; MAX_PERM_DEGREE];
        for i in 0..self.n as usize {
            img[self.img[i] as usize] = i as u8;
        }
        Perm { n: self.n, img }
    }

    /// Position in the lexicographic enumeration of all permutations of degree n.
    pub fn lex_rank(&self) -> usize {
        let n = self.n as usize;
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = (i + 1..n).filter(|&j| self.img[j] < self.img[i]).count();
            rank = rank * (n - i) + smaller_after;
        }
        rank
    }

    /// In-place step to the lexicographic successor; false at the last permutation.
    pub(crate) fn advance(&mut self) -> bool {
        let n = self.n as usize;
        let a = &mut self.img[..n];
        if n < 2 {
            return false;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| a[j] > a[i]).expect("successor exists");
        a.swap(i, j);
        a[i + 1..].reverse();
        true
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// Freely reduced word; letter `g > 0` is generator `x_g`, `-g` its inverse.
///
/// Ordered shortlex: shorter words first, then lexicographically by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces `letters`; zero letters are rejected.
    pub fn reduced(letters: impl IntoIterator<Item = i32>) -> Option<Word> {
        let mut out: Vec<i32> = Vec::new();
        for g in letters {
            if g == 0 {
                return None;
            }
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Some(Word(out))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1]) && !self.0.contains(&0)
    }

    /// Concatenation followed by cancellation at the seam.
    pub fn concat(&self, right: &Word) -> Word {
        let mut cancel = 0;
        while cancel < self.0.len()
            && cancel < right.0.len()
            && self.0[self.0.len() - 1 - cancel] == -right.0[cancel]
        {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(self.0.len() + right.0.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.0.len() - cancel]);
        out.extend_from_slice(&right.0[cancel..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| -g).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *g > 0 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{}^-1", -g)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Residues(r) if r.len() == 1 => write!(f, "{}", r[0]),
            Element::Residues(r) => {
                write!(f, "(")?;
                for (i, x) in r.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Dihedral { rot: 0, reflect: false } => write!(f, "e"),
            Element::Dihedral { rot: 0, reflect: true } => write!(f, "s"),
            Element::Dihedral { rot, reflect: false } => write!(f, "r{rot}"),
            Element::Dihedral { rot, reflect: true } => write!(f, "r{rot}s"),
            Element::Perm(p) => write!(f, "{p}"),
            Element::Matrix([a, b, c, d]) => write!(f, "[[{a},{b}],[{c},{d}]]"),
            Element::Word(w) => write!(f, "{w}"),
        }
    }
}
