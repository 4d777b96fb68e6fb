//! Deterministic Schreier–Sims.
//!
//! Base points are chosen as the smallest point moved by the first strong
//! generator that fixes the current base. Transversal elements are fixed
//! once assigned, so sifting results never change as the chain grows.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the level's base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(degree: usize, generators: &[Permutation]) -> Bsgs {
        let mut chain = Bsgs { degree, base: Vec::new(), strong: Vec::new(), levels: Vec::new() };
        for g in generators {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.strong.push(g.clone());
                chain.extend_base(g);
            }
        }
        loop {
            chain.rebuild_levels();
            match chain.failing_schreier_generator() {
                None => break,
                Some(h) => {
                    chain.extend_base(&h);
                    chain.strong.push(h);
                }
            }
        }
        chain
    }

    fn extend_base(&mut self, g: &Permutation) {
        if self.base.iter().all(|&b| g.apply(b) == b) {
            let p = g.smallest_moved_point().expect("non-identity generator");
            self.base.push(p);
        }
    }

    fn level_generators(&self, i: usize) -> Vec<&Permutation> {
        let fixed = &self.base[..i];
        self.strong.iter().filter(|s| fixed.iter().all(|&b| s.apply(b) == b)).collect()
    }

    fn rebuild_levels(&mut self) {
        let old = std::mem::take(&mut self.levels);
        let mut levels = Vec::with_capacity(self.base.len());
        for (i, &point) in self.base.iter().enumerate() {
            let gens = self.level_generators(i);
            let (mut orbit, mut transversal) = match old.get(i) {
                Some(l) => (l.orbit.clone(), l.transversal.clone()),
                None => {
                    let mut t = vec![None; self.degree];
                    t[point] = Some(Permutation::identity(self.degree));
                    (vec![point], t)
                }
            };
            let mut head = 0;
            // Re-scan the whole orbit: new generators can extend it from any point.
            while head < orbit.len() {
                let b = orbit[head];
                head += 1;
                for s in &gens {
                    let c = s.apply(b);
                    if transversal[c].is_none() {
                        let u = transversal[b].as_ref().unwrap().compose(s);
                        transversal[c] = Some(u);
                        orbit.push(c);
                    }
                }
            }
            levels.push(Level { point, orbit, transversal });
        }
        self.levels = levels;
    }

    fn failing_schreier_generator(&self) -> Option<Permutation> {
        for i in (0..self.levels.len()).rev() {
            let gens = self.level_generators(i);
            let level = &self.levels[i];
            for &b in &level.orbit {
                let ub = level.transversal[b].as_ref().unwrap();
                for s in &gens {
                    let c = s.apply(b);
                    let uc = level.transversal[c].as_ref().unwrap();
                    let sg = ub.compose(s).compose(&uc.inverse());
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, _) = self.sift(&sg, i + 1);
                    if !h.is_identity() {
                        return Some(h);
                    }
                }
            }
        }
        None
    }

    /// Strips `g` through levels `start..`; returns the residue and the level
    /// where stripping stopped (`levels.len()` if it went all the way).
    pub fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.point);
            match &level.transversal[b] {
                None => return (h, i),
                Some(u) => h = h.compose(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Every group element, as products of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for x in &elems {
                for &b in &level.orbit {
                    next.push(x.compose(level.transversal[b].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        elems
    }
}
