use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`; read and printed in one-line notation
/// over `{1, .., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// From one-line notation over `1..=n`.
    pub fn from_one_line(line: &[usize]) -> Result<Perm> {
        let n = line.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPerm(format!(
                    "{line:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Perm { images })
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let line: Vec<usize> = images.iter().map(|&i| i + 1).collect();
        Perm::from_one_line(&line)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_roundtrip_and_composition() {
        let r = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(r.one_line(), vec![2, 3, 1]);
        assert_eq!(r.to_string(), "(2 3 1)");
        let r3 = r.compose(&r).compose(&r);
        assert!(r3.is_identity());
        let s = Perm::from_one_line(&[1, 3, 2]).unwrap();
        // (r∘s)(2) = r(s(2)) = r(3) = 1
        assert_eq!(r.compose(&s).apply(1), 0);
        assert!(r.compose(&r.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_one_line(&[1, 1]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
        assert!(Perm::from_one_line(&[3, 1]).is_err());
    }
}
