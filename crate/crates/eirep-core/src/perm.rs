//! Permutations of `{0, .., n-1}` in image form.

use crate::{Error, Result};

/// A permutation stored as its image list: `p[i]` is where `i` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    /// Build from an image list, checking that it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(Error::Validation(format!(
                    "permutation image {im} out of range for degree {n}"
                )));
            }
            if seen[im] {
                return Err(Error::Validation(format!(
                    "permutation image {im} repeated; not a bijection"
                )));
            }
            seen[im] = true;
        }
        Ok(Perm(images))
    }

    /// Build from disjoint-cycle notation. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cyc in cycles {
            for (k, &pt) in cyc.iter().enumerate() {
                let pt = pt as usize;
                if pt >= degree {
                    return Err(Error::Validation(format!(
                        "cycle point {pt} out of range for degree {degree}"
                    )));
                }
                if moved[pt] {
                    return Err(Error::Validation(format!("point {pt} appears twice in cycles")));
                }
                moved[pt] = true;
                images[pt] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &im) in self.0.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.apply(cur);
            }
            out.push(len);
        }
        out
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.apply(cur);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(fm, "()");
        }
        for cyc in cycles {
            write!(fm, "(")?;
            for (k, pt) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(fm, " ")?;
                }
                write!(fm, "{pt}")?;
            }
            write!(fm, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        // a = (0 1), b = (1 2) on 3 points. (a∘b)(1) = a(2) = 2, (a∘b)(2) = a(1) = 0.
        let a = Perm::from_images(vec![1, 0, 2]).unwrap();
        let b = Perm::from_images(vec![0, 2, 1]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.images(), &[1, 2, 0]);
        let ba = b.compose(&a);
        assert_eq!(ba.images(), &[2, 0, 1]);
    }

    #[test]
    fn inverse_and_order() {
        let c = Perm::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(c.order(), 6);
        assert!(c.compose(&c.inverse()).is_identity());
        assert!(c.inverse().compose(&c).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn cycle_roundtrip() {
        let p = Perm::from_images(vec![2, 0, 1, 4, 3]).unwrap();
        let q = Perm::from_cycles(5, &p.cycles().iter().map(|c| c.iter().map(|&x| x as u32).collect()).collect::<Vec<_>>()).unwrap();
        assert_eq!(p, q);
    }
}
