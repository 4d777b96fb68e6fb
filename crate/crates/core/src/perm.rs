//! Permutations of `{0, .., n-1}` with 1-based cycle notation for I/O.
//!
//! Products act on the right: `(a * b)(i) = b(a(i))`, so `a * b` means
//! "apply `a`, then `b`". Conjugation follows the same convention,
//! `a^h = h^-1 * a * h`.

use std::fmt;
use std::ops::Mul;

use crate::arith::lcm;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, rejecting anything that is
    /// not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Input(format!("image sequence {images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Same as [`Permutation::from_images`] but with 1-based points.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Input("point 0 in a 1-based image sequence".into()));
        }
        Self::from_images(images.iter().map(|&x| (x - 1) as u32).collect())
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)` or `(1,2,3)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let mut chars = text.trim().chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c != '(' {
                return Err(Error::Input(format!("expected '(' but found '{c}' in \"{text}\"")));
            }
            let mut cycle: Vec<usize> = Vec::new();
            let mut number = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                match c {
                    '0'..='9' => number.push(c),
                    ' ' | '\t' | ',' | ')' => {
                        if !number.is_empty() {
                            let point: usize = number.parse().map_err(|_| {
                                Error::Input(format!("bad point \"{number}\" in \"{text}\""))
                            })?;
                            if point == 0 || point > degree {
                                return Err(Error::Input(format!(
                                    "point {point} out of range 1..={degree} in \"{text}\""
                                )));
                            }
                            cycle.push(point - 1);
                            number.clear();
                        }
                        if c == ')' {
                            closed = true;
                            break;
                        }
                    }
                    _ => {
                        return Err(Error::Input(format!("unexpected '{c}' inside cycle in \"{text}\"")))
                    }
                }
            }
            if !closed {
                return Err(Error::Input(format!("unterminated cycle in \"{text}\"")));
            }
            for &p in &cycle {
                if touched[p] {
                    return Err(Error::Input(format!(
                        "point {} appears twice in \"{text}\" (not a bijection)",
                        p + 1
                    )));
                }
                touched[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `h^-1 * self * h`
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[h.images[i] as usize] = h.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse_cycles(5, "(1 2 3)(4,5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles(3, "(1 2(3").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2 1)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn right_action_product() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(a.conjugate_by(&b), &(&b.inverse() * &a) * &b);
        assert!((&b * &b.inverse()).is_identity());
        assert_eq!(b.pow(4), b);
    }
}
