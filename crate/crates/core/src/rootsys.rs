//! Root systems of the almost-simple types and their Weyl groups.
//!
//! Simple roots use Bourbaki's ambient coordinates. Every root is also kept
//! as an integer vector of simple-root coefficients; the Weyl group is
//! represented by its permutation action on the root list.
//!
//! Composition convention: the word `[i1, i2, .., ik]` denotes
//! `s_{i1} ∘ s_{i2} ∘ .. ∘ s_{ik}`, so the leftmost letter acts last.
//! Indices are zero-based throughout the library.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("invalid rank {rank} for type {tag}: {reason}")]
    InvalidRank {
        tag: TypeTag,
        rank: usize,
        reason: String,
    },
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::C => "C",
            TypeTag::D => "D",
            TypeTag::E => "E",
            TypeTag::F => "F",
            TypeTag::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeTag {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeTag::A),
            "B" => Ok(TypeTag::B),
            "C" => Ok(TypeTag::C),
            "D" => Ok(TypeTag::D),
            "E" => Ok(TypeTag::E),
            "F" => Ok(TypeTag::F),
            "G" => Ok(TypeTag::G),
            _ => Err(RootSystemError::UnknownType(s.to_string())),
        }
    }
}

impl TypeTag {
    /// Checks that `(self, rank)` names an irreducible reduced root system.
    pub fn validate_rank(self, rank: usize) -> Result<(), RootSystemError> {
        let bad = |reason: &str| {
            Err(RootSystemError::InvalidRank {
                tag: self,
                rank,
                reason: reason.to_string(),
            })
        };
        match self {
            TypeTag::A if rank < 1 => bad("type A needs rank at least 1"),
            TypeTag::B if rank < 2 => bad("type B needs rank at least 2"),
            TypeTag::C if rank < 2 => bad("type C needs rank at least 2"),
            TypeTag::D if rank < 3 => bad("type D needs rank at least 3"),
            TypeTag::E if !(6..=8).contains(&rank) => bad("type E exists only in ranks 6, 7, 8"),
            TypeTag::F if rank != 4 => bad("type F exists only in rank 4"),
            TypeTag::G if rank != 2 => bad("type G exists only in rank 2"),
            _ => Ok(()),
        }
    }
}

/// A Weyl group element, stored as the permutation it induces on the roots
/// of its root system.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<u16>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({:?})", self.perm)
    }
}

impl WeylElement {
    /// Index of the image of root `r`.
    pub fn apply(&self, r: usize) -> usize {
        self.perm[r] as usize
    }
}

/// A word in the simple reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    letters: Vec<usize>,
    is_reduced: bool,
}

impl WeylWord {
    /// A word with no reducedness claim.
    pub fn new(letters: Vec<usize>) -> Self {
        let is_reduced = letters.is_empty();
        WeylWord {
            letters,
            is_reduced,
        }
    }

    pub fn identity() -> Self {
        WeylWord {
            letters: Vec::new(),
            is_reduced: true,
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.is_reduced
    }
}

impl From<Vec<usize>> for WeylWord {
    fn from(letters: Vec<usize>) -> Self {
        WeylWord::new(letters)
    }
}

/// Root system data for one almost-simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    type_tag: TypeTag,
    rank: usize,
    simple_roots: Vec<Vec<Q>>,
    /// Simple-root coefficients; positives first (by height), then negatives in the same order.
    roots: Vec<Vec<i64>>,
    ambient: Vec<Vec<Q>>,
    /// Coroot of each root in simple-coroot coefficients.
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    cartan: Vec<Vec<i64>>,
    coxeter_m: Vec<Vec<u32>>,
    simple_perms: Vec<WeylElement>,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![q(0); dim];
    v[i] = q(1);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] = q(-1);
    v
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn simple_roots_for(tag: TypeTag, n: usize) -> Vec<Vec<Q>> {
    match tag {
        TypeTag::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        TypeTag::B | TypeTag::C | TypeTag::D => {
            let mut v: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match tag {
                TypeTag::B => unit(n, n - 1),
                TypeTag::C => {
                    let mut e = vec![q(0); n];
                    e[n - 1] = q(2);
                    e
                }
                _ => {
                    let mut e = vec![q(0); n];
                    e[n - 2] = q(1);
                    e[n - 1] = q(1);
                    e
                }
            };
            v.push(last);
            v
        }
        TypeTag::E => {
            let half = Q::new(1, 2);
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut a2 = vec![q(0); 8];
            a2[0] = q(1);
            a2[1] = q(1);
            let mut v = vec![a1, a2];
            // α3 = e2 - e1, α4 = e3 - e2, ..
            for k in 1..7 {
                v.push(diff(8, k, k - 1));
            }
            v.truncate(n);
            v
        }
        TypeTag::F => {
            let half = Q::new(1, 2);
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![half, -half, -half, -half],
            ]
        }
        TypeTag::G => vec![vec![q(1), q(-1), q(0)], vec![q(-2), q(1), q(1)]],
    }
}

impl RootSystem {
    pub fn new(type_tag: TypeTag, rank: usize) -> Result<Self, RootSystemError> {
        type_tag.validate_rank(rank)?;
        let simple_roots = simple_roots_for(type_tag, rank);
        let n = rank;

        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            let ni = dot(&simple_roots[i], &simple_roots[i]);
            for j in 0..n {
                let c = q(2) * dot(&simple_roots[i], &simple_roots[j]) / ni;
                assert!(c.is_integer(), "non-integral Cartan entry");
                cartan[i][j] = c.to_integer();
            }
        }
        let coxeter_m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1
                        } else {
                            match cartan[i][j] * cartan[j][i] {
                                0 => 2,
                                1 => 3,
                                2 => 4,
                                3 => 6,
                                p => panic!("Cartan product {p} is not crystallographic"),
                            }
                        }
                    })
                    .collect()
            })
            .collect();

        // Orbit of the simple roots under the simple reflections.
        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| b[j] * cartan[i][j]).sum();
                let mut img = b.clone();
                img[i] -= pairing;
                if seen.insert(img.clone(), ()).is_none() {
                    queue.push_back(img);
                }
            }
            found.push(b);
        }
        let mut positives: Vec<Vec<i64>> = found
            .into_iter()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .collect();
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots = positives.clone();
        roots.extend(
            positives
                .iter()
                .map(|b| b.iter().map(|x| -x).collect::<Vec<_>>()),
        );

        let dim = simple_roots[0].len();
        let ambient: Vec<Vec<Q>> = roots
            .iter()
            .map(|b| {
                (0..dim)
                    .map(|c| (0..n).map(|j| q(b[j]) * simple_roots[j][c]).sum())
                    .collect()
            })
            .collect();
        let simple_norms: Vec<Q> = simple_roots.iter().map(|a| dot(a, a)).collect();
        let coroots = roots
            .iter()
            .zip(&ambient)
            .map(|(b, amb)| {
                let nb = dot(amb, amb);
                (0..n)
                    .map(|k| {
                        let c = q(b[k]) * simple_norms[k] / nb;
                        assert!(c.is_integer(), "non-integral coroot coefficient");
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();

        let mut sys = RootSystem {
            type_tag,
            rank,
            simple_roots,
            roots,
            ambient,
            coroots,
            index,
            cartan,
            coxeter_m,
            simple_perms: Vec::new(),
        };
        sys.simple_perms = (0..n)
            .map(|i| {
                let perm = (0..sys.roots.len())
                    .map(|r| {
                        let img = sys.reflect_coeffs(i, &sys.roots[r]);
                        sys.index[&img] as u16
                    })
                    .collect();
                WeylElement { perm }
            })
            .collect();
        Ok(sys)
    }

    fn reflect_coeffs(&self, i: usize, b: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|j| b[j] * self.cartan[i][j]).sum();
        let mut img = b.to_vec();
        img[i] -= pairing;
        img
    }

    pub fn type_tag(&self) -> TypeTag {
        self.type_tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short label such as `E8`.
    pub fn name(&self) -> String {
        format!("{}{}", self.type_tag, self.rank)
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    /// `cartan[i][j] = <α_i^∨, α_j> = 2(α_i, α_j)/(α_i, α_i)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Order of `s_i s_j`; diagonal entries are 1.
    pub fn coxeter_m(&self, i: usize, j: usize) -> u32 {
        self.coxeter_m[i][j]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Root `r` in simple-root coefficients.
    pub fn root(&self, r: usize) -> &[i64] {
        &self.roots[r]
    }

    /// Root `r` in ambient coordinates.
    pub fn root_ambient(&self, r: usize) -> &[Q] {
        &self.ambient[r]
    }

    /// Coroot of root `r` in simple-coroot coefficients.
    pub fn coroot(&self, r: usize) -> &[i64] {
        &self.coroots[r]
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of the simple root `α_i` (the simple roots come first).
    pub fn simple_root_index(&self, i: usize) -> usize {
        debug_assert_eq!(self.roots[i].iter().sum::<i64>(), 1);
        i
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.num_positive()
    }

    pub fn negate(&self, r: usize) -> usize {
        let p = self.num_positive();
        if r < p {
            r + p
        } else {
            r - p
        }
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootSystemError> {
        if i < self.rank {
            Ok(())
        } else {
            Err(RootSystemError::BadIndex {
                index: i,
                rank: self.rank,
            })
        }
    }

    /// Reflection of an ambient vector through `α_i`.
    pub fn reflect(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let a = &self.simple_roots[i];
        let c = q(2) * dot(v, a) / dot(a, a);
        v.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }

    /// Action of a word on an ambient vector; the rightmost letter acts first.
    pub fn word_action(&self, w: &WeylWord, v: &[Q]) -> Vec<Q> {
        w.letters()
            .iter()
            .rev()
            .fold(v.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            perm: (0..self.roots.len() as u16).collect(),
        }
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.simple_perms[i]
    }

    /// `u ∘ v`.
    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        WeylElement {
            perm: v.perm.iter().map(|&r| u.perm[r as usize]).collect(),
        }
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut perm = vec![0u16; w.perm.len()];
        for (r, &img) in w.perm.iter().enumerate() {
            perm[img as usize] = r as u16;
        }
        WeylElement { perm }
    }

    pub fn power(&self, w: &WeylElement, n: u32) -> WeylElement {
        (0..n).fold(self.identity(), |acc, _| self.compose(&acc, w))
    }

    pub fn element(&self, w: &WeylWord) -> WeylElement {
        self.element_of(w.letters())
    }

    pub fn element_of(&self, letters: &[usize]) -> WeylElement {
        let mut acc = self.identity();
        for &i in letters.iter().rev() {
            acc = self.compose(&self.simple_perms[i], &acc);
        }
        acc
    }

    pub fn is_identity(&self, w: &WeylElement) -> bool {
        w.perm.iter().enumerate().all(|(r, &x)| r == x as usize)
    }

    pub fn order(&self, w: &WeylElement) -> u32 {
        let mut acc = w.clone();
        let mut k = 1;
        while !self.is_identity(&acc) {
            acc = self.compose(&acc, w);
            k += 1;
        }
        k
    }

    /// Positive roots sent to negative roots by `w`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.num_positive())
            .filter(|&r| !self.is_positive(w.apply(r)))
            .collect()
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.num_positive())
            .filter(|&r| !self.is_positive(w.apply(r)))
            .count()
    }

    /// A reduced word for `w`, found by peeling right descents.
    pub fn reduced_word(&self, w: &WeylElement) -> WeylWord {
        let mut w = w.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| !self.is_positive(w.apply(i))) {
            rev.push(i);
            w = self.compose(&w, &self.simple_perms[i]);
        }
        rev.reverse();
        WeylWord {
            letters: rev,
            is_reduced: true,
        }
    }

    pub fn reduce_word(&self, w: &WeylWord) -> WeylWord {
        if w.is_reduced() {
            return w.clone();
        }
        self.reduced_word(&self.element(w))
    }

    /// Returns the word with its reducedness flag checked against the inversion count.
    pub fn checked_word(&self, letters: Vec<usize>) -> WeylWord {
        let len = self.length(&self.element_of(&letters));
        let is_reduced = len == letters.len();
        WeylWord {
            letters,
            is_reduced,
        }
    }

    /// Longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_element(&self, subset: &[usize]) -> WeylElement {
        let mut w = self.identity();
        while let Some(&i) = subset.iter().find(|&&i| self.is_positive(w.apply(i))) {
            w = self.compose(&w, &self.simple_perms[i]);
        }
        w
    }

    /// The element determined by where it sends the simple roots, if any.
    pub fn element_from_simple_images(&self, images: &[usize]) -> Option<WeylElement> {
        // Walk down to the identity by right descents of the candidate.
        let mut imgs = images.to_vec();
        let mut word = Vec::new();
        for _ in 0..=self.num_positive() {
            match (0..self.rank).find(|&i| !self.is_positive(imgs[i])) {
                None => {
                    let ok = imgs.iter().enumerate().all(|(i, &r)| r == i);
                    if !ok {
                        return None;
                    }
                    word.reverse();
                    return Some(self.element_of(&word));
                }
                Some(i) => {
                    // w s_i sends α_j to w(s_i α_j) = w(α_j) - c_ij w(α_i)
                    let wi = self.roots[imgs[i]].clone();
                    let next: Option<Vec<usize>> = (0..self.rank)
                        .map(|j| {
                            let c = self.cartan[i][j];
                            let v: Vec<i64> = self.roots[imgs[j]]
                                .iter()
                                .zip(&wi)
                                .map(|(a, b)| a - c * b)
                                .collect();
                            self.root_index(&v)
                        })
                        .collect();
                    imgs = next?;
                    word.push(i);
                }
            }
        }
        None
    }

    /// Every element of the Weyl group. Only sensible for small groups.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut out = vec![self.identity()];
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        seen.insert(self.identity(), ());
        let mut k = 0;
        while k < out.len() {
            for s in &self.simple_perms {
                let e = self.compose(&out[k], s);
                if seen.insert(e.clone(), ()).is_none() {
                    out.push(e);
                }
            }
            k += 1;
        }
        out
    }

    /// Pairs `(i, j)`, `i < j`, joined by an edge of the Dynkin diagram.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.cartan[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
