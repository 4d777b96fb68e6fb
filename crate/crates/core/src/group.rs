//! Finite permutation groups with fully enumerated elements and conjugacy classes.
//!
//! Groups are immutable once built. Subgroups and quotients are groups in
//! their own right; containment in a parent is checked where it matters.

use std::collections::HashMap;

use crate::arith::lcm;
use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Lexicographically smallest member.
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
    members: Vec<usize>,
}

impl ConjClass {
    /// Indices into [`Group::elements`].
    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: Bsgs,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    inverse: Vec<usize>,
    exponent: u64,
}

/// Image of `G` under the coset action on a normal subgroup `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// Element index of `G` to element index of `G/N`.
    image: Vec<usize>,
}

impl Quotient {
    pub fn project_index(&self, g_index: usize) -> usize {
        self.image[g_index]
    }

    pub fn project(&self, parent: &Group, g: &Permutation) -> Option<&Permutation> {
        parent.element_index(g).map(|i| &self.group.elements[self.image[i]])
    }

    /// Class of `G/N` containing the image of each class of `G`.
    pub fn class_map(&self, parent: &Group) -> Vec<usize> {
        parent
            .classes
            .iter()
            .map(|c| self.group.class_of[self.image[c.members[0]]])
            .collect()
    }
}

impl Group {
    /// Builds the group generated by `generators` on `{1..degree}`.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let bsgs = Bsgs::new(degree, &generators);
        Ok(Self::from_bsgs(degree, generators, bsgs))
    }

    pub fn trivial(degree: usize) -> Group {
        Self::from_bsgs(degree, Vec::new(), Bsgs::new(degree, &[]))
    }

    fn from_bsgs(degree: usize, generators: Vec<Permutation>, bsgs: Bsgs) -> Group {
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut elements = bsgs.elements();
        elements.sort();
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let inverse: Vec<usize> = elements.iter().map(|e| index[&e.inverse()]).collect();

        // Iterating elements in sorted order means the first unassigned
        // element met is the smallest member of its class.
        let n = elements.len();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw: Vec<ConjClass> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            raw_class[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = &elements[members[head]];
                head += 1;
                for g in &generators {
                    let y = index[&x.conjugate_by(g)];
                    if raw_class[y] == usize::MAX {
                        raw_class[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            let representative = elements[start].clone();
            let element_order = representative.order();
            raw.push(ConjClass { representative, size: members.len(), element_order, members });
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&raw[a], &raw[b]);
            (x.element_order, x.size, &x.representative).cmp(&(y.element_order, y.size, &y.representative))
        });
        let mut relabel = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let class_of: Vec<usize> = raw_class.iter().map(|&c| relabel[c]).collect();
        let mut slots: Vec<Option<ConjClass>> = raw.into_iter().map(Some).collect();
        let classes: Vec<ConjClass> = order.iter().map(|&o| slots[o].take().unwrap()).collect();
        let exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.element_order));

        Group { degree, generators, bsgs, elements, index, classes, class_of, inverse, exponent }
    }

    /// The subgroup generated by a set of elements of this group's degree,
    /// with a small generating set picked greedily in iteration order.
    pub fn generated_by<'a>(degree: usize, elems: impl IntoIterator<Item = &'a Permutation>) -> Group {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut bsgs = Bsgs::new(degree, &[]);
        for x in elems {
            if !bsgs.contains(x) {
                gens.push(x.clone());
                bsgs = Bsgs::new(degree, &gens);
            }
        }
        Self::from_bsgs(degree, gens, bsgs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Bsgs {
        &self.bsgs
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// All elements in ascending lexicographic order of image sequences.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.bsgs.contains(g)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i])
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Product of two elements given by index.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_of[self.inverse[self.classes[class].members[0]]]
    }

    /// Class containing `g^k` for `g` in `class`.
    pub fn power_class(&self, class: usize, k: u64) -> usize {
        self.class_of(&self.classes[class].representative.pow(k)).unwrap()
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order() / self.classes[class].size as u64
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, parent: &Group) -> bool {
        self.degree == parent.degree && self.generators.iter().all(|g| parent.contains(g))
    }

    pub fn is_normal_in(&self, parent: &Group) -> bool {
        self.is_subgroup_of(parent)
            && parent
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    /// Same element set.
    pub fn same_as(&self, other: &Group) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }

    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<Group> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotMember(g.to_string()));
            }
        }
        Group::new(self.degree, generators)
    }

    /// Subgroup generated by whole conjugacy classes (always normal).
    pub fn subgroup_from_classes(&self, classes: impl IntoIterator<Item = usize>) -> Group {
        let mut idx: Vec<usize> =
            classes.into_iter().flat_map(|c| self.classes[c].members.iter().copied()).collect();
        idx.sort_unstable();
        idx.dedup();
        Group::generated_by(self.degree, idx.iter().map(|&i| &self.elements[i]))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<Group> {
        let mut classes = Vec::new();
        for s in seeds {
            match self.class_of(s) {
                Some(c) => classes.push(c),
                None => return Err(Error::NotMember(s.to_string())),
            }
        }
        Ok(self.subgroup_from_classes(classes))
    }

    /// `G/N` realized by the right-multiplication action on the cosets of `N`.
    pub fn quotient(&self, n: &Group) -> Result<Quotient> {
        if !n.is_normal_in(self) {
            return Err(Error::NotNormal);
        }
        let size = self.elements.len();
        let mut coset_of = vec![usize::MAX; size];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..size {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for x in &n.elements {
                coset_of[self.index[&x.compose(&self.elements[g])]] = c;
            }
        }
        let m = reps.len();
        let action = |g: &Permutation| -> Permutation {
            let images =
                reps.iter().map(|&r| coset_of[self.index[&self.elements[r].compose(g)]] as u32).collect();
            Permutation::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Permutation> = self.generators.iter().map(&action).collect();
        let group = Group::new(m, gens)?;
        let rep_images: Vec<usize> =
            reps.iter().map(|&r| group.index[&action(&self.elements[r])]).collect();
        let image = coset_of.iter().map(|&c| rep_images[c]).collect();
        Ok(Quotient { group, image })
    }

    /// Maps each class of `self` (a subgroup) to the class of `parent` containing it.
    pub fn class_fusion(&self, parent: &Group) -> Result<Vec<usize>> {
        self.classes
            .iter()
            .map(|c| {
                parent
                    .class_of(&c.representative)
                    .ok_or_else(|| Error::NotMember(c.representative.to_string()))
            })
            .collect()
    }

    /// `g^-1 H g` for a subgroup `H`.
    pub fn conjugate_subgroup(sub: &Group, g: &Permutation) -> Group {
        let gens: Vec<Permutation> = sub.generators.iter().map(|h| h.conjugate_by(g)).collect();
        Group::new(sub.degree, gens).expect("conjugate generators have the right degree")
    }

    /// Whether every element of `sub` lies in `self`.
    pub fn contains_subgroup(&self, sub: &Group) -> bool {
        sub.degree == self.degree && sub.generators.iter().all(|g| self.contains(g))
    }
}
