//! Exact character tables by the Dixon–Schneider method.
//!
//! Central characters are the common eigenvectors of the class matrices.
//! They are split out over `F_q` for the smallest prime `q ≡ 1 (mod e)`
//! with `q > 2·sqrt|G|`, iterating class matrices in class order. Each
//! character value is then recovered in `Z[ζ_e]` from the multiplicities
//! of the eigenvalues of `ρ(g)`, which are integers in `[0, χ(1)]` and
//! therefore survive reduction mod `q` unchanged. The root `ζ_e` is sent to
//! `r^((q-1)/e)` for the smallest primitive root `r` mod `q`.

use std::collections::HashMap;
use std::ops::Deref;

use crate::arith::{inv_mod, is_prime, mod_pow, mul_mod, nullspace_mod, primitive_root, rref_mod};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::Group;

/// A class function as one value per class, in the owning group's class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction(pub Vec<Cyclo>);

impl Deref for ClassFunction {
    type Target = [Cyclo];
    fn deref(&self) -> &[Cyclo] {
        &self.0
    }
}

impl ClassFunction {
    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction(self.0.iter().map(Cyclo::conj).collect())
    }

    /// Coefficients of every value embedded in conductor `e`, concatenated.
    fn key(&self, e: u32) -> Vec<i64> {
        self.0.iter().flat_map(|v| v.embed(e).coeffs().to_vec()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: u64,
    exponent: u32,
    modulus: u64,
    class_sizes: Vec<u64>,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    rows: Vec<Vec<Cyclo>>,
    degrees: Vec<u64>,
    row_index: HashMap<Vec<i64>, usize>,
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2·sqrt(n)`.
pub fn dixon_modulus(e: u64, n: u64) -> u64 {
    let mut q = e + 1;
    while !(is_prime(q) && q * q > 4 * n) {
        q += e;
    }
    q
}

impl CharacterTable {
    pub fn compute(g: &Group) -> Result<CharacterTable> {
        let n = g.order();
        let r = g.num_classes();
        let e = g.exponent();
        let q = dixon_modulus(e, n);
        let classes = g.classes();
        let class_sizes: Vec<u64> = classes.iter().map(|c| c.size as u64).collect();
        let element_orders: Vec<u64> = classes.iter().map(|c| c.element_order).collect();
        let inverse_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();

        // coef[j][i][k] = #{x in C_j : x^-1 z_k in C_i} for a fixed z_k in C_k
        let mut coef = vec![vec![vec![0u64; r]; r]; r];
        for (k, class) in classes.iter().enumerate() {
            let z = class.members()[0];
            for x in 0..n as usize {
                let j = g.class_of_index(x);
                let i = g.class_of_index(g.mul_index(g.inverse_index(x), z));
                coef[j][i][k] += 1;
            }
        }

        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect()];
        for mat in coef.iter().skip(1) {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                } else {
                    next.extend(split_space(&space, mat, q)?);
                }
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(Error::internal(format!(
                "class matrices split into {} eigenspaces, expected {r}",
                spaces.len()
            )));
        }

        let root = mod_pow(primitive_root(q), (q - 1) / e, q);
        let power_classes: Vec<Vec<usize>> = (0..r)
            .map(|c| (0..element_orders[c]).map(|l| g.power_class(c, l)).collect())
            .collect();
        let isqrt = (n as f64).sqrt() as u64 + 1;

        let mut rows = Vec::with_capacity(r);
        let mut degrees = Vec::with_capacity(r);
        for space in &spaces {
            let v = &space[0];
            let inv0 = inv_mod(v[0], q);
            let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, q)).collect();
            // χ(1)^2 · Σ ω_i ω_{i*} / |C_i| = |G|
            let s = (0..r).fold(0, |acc, i| {
                let t = mul_mod(mul_mod(omega[i], omega[inverse_class[i]], q), inv_mod(class_sizes[i] % q, q), q);
                (acc + t) % q
            });
            if s == 0 {
                return Err(Error::internal("degenerate central character"));
            }
            let target = mul_mod(n % q, inv_mod(s, q), q);
            let d = (1..=isqrt)
                .find(|&d| d * d <= n && mul_mod(d, d, q) == target)
                .ok_or_else(|| Error::internal("no admissible character degree"))?;
            let values_mod: Vec<u64> = (0..r)
                .map(|i| mul_mod(mul_mod(omega[i], d, q), inv_mod(class_sizes[i] % q, q), q))
                .collect();
            let mut row = Vec::with_capacity(r);
            for i in 0..r {
                let o = element_orders[i];
                let step = e / o;
                let zeta_o = mod_pow(root, step, q);
                let inv_o = inv_mod(o % q, q);
                let mut terms = Vec::new();
                for k in 0..o {
                    // m_k = (1/o) Σ_l χ(g^l) ζ_o^(-kl)
                    let mut acc = 0;
                    for l in 0..o {
                        let w = mod_pow(zeta_o, (o - (k * l) % o) % o, q);
                        acc = (acc + mul_mod(values_mod[power_classes[i][l as usize]], w, q)) % q;
                    }
                    let m = mul_mod(acc, inv_o, q);
                    if m > d {
                        return Err(Error::internal(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
                    }
                    terms.push((k * step, m as i64));
                }
                row.push(Cyclo::from_terms(e as u32, terms));
            }
            rows.push(row);
            degrees.push(d);
        }

        // trivial character first, then degree, then coefficient sequence
        let one = Cyclo::one(e as u32);
        let mut order: Vec<usize> = (0..r).collect();
        let sort_key = |i: usize| {
            let trivial = rows[i].iter().all(|v| *v == one);
            let coeffs: Vec<i64> = rows[i].iter().flat_map(|v| v.coeffs().to_vec()).collect();
            (!trivial, degrees[i], coeffs)
        };
        order.sort_by_cached_key(|&i| sort_key(i));
        let rows: Vec<Vec<Cyclo>> = order.iter().map(|&i| rows[i].clone()).collect();
        let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();

        if degrees.iter().map(|d| d * d).sum::<u64>() != n {
            return Err(Error::internal("sum of squared degrees differs from the group order"));
        }
        let mut table = CharacterTable {
            order: n,
            exponent: e as u32,
            modulus: q,
            class_sizes,
            element_orders,
            inverse_class,
            rows,
            degrees,
            row_index: HashMap::new(),
        };
        table.row_index = (0..r).map(|i| (table.character(i).key(table.exponent), i)).collect();
        Ok(table)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The prime used for the modular eigenvector computation.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Number of irreducible characters.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn row(&self, chi: usize) -> &[Cyclo] {
        &self.rows[chi]
    }

    pub fn rows(&self) -> &[Vec<Cyclo>] {
        &self.rows
    }

    pub fn character(&self, chi: usize) -> ClassFunction {
        ClassFunction(self.rows[chi].clone())
    }

    /// Index of the irreducible character equal to `f`, if any.
    pub fn find(&self, f: &ClassFunction) -> Option<usize> {
        if f.iter().all(|v| v.conductor() == self.exponent) {
            return self.row_index.get(&f.key(self.exponent)).copied();
        }
        (0..self.len()).find(|&i| self.rows[i][..] == f[..])
    }

    pub fn regular_character(&self) -> ClassFunction {
        let e = self.exponent;
        ClassFunction(
            (0..self.num_classes())
                .map(|c| Cyclo::from_int(e, if c == 0 { self.order as i64 } else { 0 }))
                .collect(),
        )
    }

    /// `(1/|G|) Σ_g a(g) conj(b(g))`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Cyclo> {
        if a.len() != self.num_classes() || b.len() != self.num_classes() {
            return Err(Error::Input("class function length differs from class count".into()));
        }
        let mut acc = Cyclo::zero(self.exponent);
        for (c, (x, y)) in a.iter().zip(b.iter()).enumerate() {
            acc = &acc + &(x * &y.conj()).scale(self.class_sizes[c] as i64);
        }
        acc.div_exact(self.order as i64)
            .ok_or_else(|| Error::Input("inner product is not a cyclotomic integer".into()))
    }

    /// Inner product known to be a rational integer (characters).
    pub fn multiplicity(&self, a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
        self.inner_product(a, b)?
            .as_integer()
            .ok_or_else(|| Error::Input("inner product is not a rational integer".into()))
    }

    /// Multiplicity of every irreducible character in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        (0..self.len()).map(|chi| self.multiplicity(f, &self.character(chi))).collect()
    }

    /// Classes on which `χ` takes the value `χ(1)`.
    pub fn kernel_classes(&self, chi: usize) -> Vec<usize> {
        let d = Cyclo::from_int(self.exponent, self.degrees[chi] as i64);
        (0..self.num_classes()).filter(|&c| self.rows[chi][c] == d).collect()
    }

    /// `Ker(χ)` as a subgroup of `g`, the group this table was computed for.
    pub fn kernel(&self, g: &Group, chi: usize) -> Group {
        g.subgroup_from_classes(self.kernel_classes(chi))
    }
}

/// Splits an invariant subspace (rows in reduced echelon form) into
/// eigenspaces of the class matrix `mat`, acting on column vectors.
fn split_space(space: &[Vec<u64>], mat: &[Vec<u64>], q: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = mat.len();
    let d = space.len();
    let mut basis = space.to_vec();
    let pivots = rref_mod(&mut basis, q);
    // restricted[i][l]: coordinate l of A·b_i
    let restricted: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            let image: Vec<u64> =
                (0..r).map(|i| (0..r).fold(0, |acc, k| (acc + mul_mod(mat[i][k] % q, b[k], q)) % q)).collect();
            pivots.iter().map(|&p| image[p]).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..q {
        // (R^T - λ) c = 0
        let m: Vec<Vec<u64>> = (0..d)
            .map(|row| {
                (0..d)
                    .map(|col| {
                        let x = restricted[col][row];
                        if row == col {
                            (x + q - lambda) % q
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace_mod(&m, d, q);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|c| {
                (0..r).map(|k| (0..d).fold(0, |acc, i| (acc + mul_mod(c[i], basis[i][k], q)) % q)).collect()
            })
            .collect();
        rref_mod(&mut vecs, q);
        out.push(vecs);
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::internal("class matrix is not diagonalizable over the splitting field"));
    }
    Ok(out)
}

/// `χ_H`: values of a class function of `G` on the classes of a subgroup.
pub fn restrict(chi: &ClassFunction, fusion: &[usize]) -> ClassFunction {
    ClassFunction(fusion.iter().map(|&c| chi[c].clone()).collect())
}

/// `ψ^G` for a class function `ψ` of the subgroup `sub ≤ parent`.
pub fn induce(psi: &ClassFunction, sub: &Group, parent: &Group, fusion: &[usize]) -> Result<ClassFunction> {
    if psi.len() != sub.num_classes() || fusion.len() != sub.num_classes() {
        return Err(Error::Input("class function does not match the subgroup".into()));
    }
    let e = psi.iter().map(|v| v.conductor()).max().unwrap_or(1);
    let mut sums: Vec<Cyclo> = vec![Cyclo::zero(e); parent.num_classes()];
    for (c, &k) in fusion.iter().enumerate() {
        sums[k] = &sums[k] + &psi[c].scale(sub.classes()[c].size as i64);
    }
    // ψ^G(K) = |G| / (|H| |K|) · Σ_{c ⊆ K} |c| ψ(c)
    let values = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let denom = sub.order() as i64 * parent.classes()[k].size as i64;
            s.scale(parent.order() as i64)
                .div_exact(denom)
                .ok_or_else(|| Error::Input("induced value is not a cyclotomic integer".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction(values))
}

/// `Irr(G | λ)`: characters of `G` whose restriction to the normal subgroup
/// `N` contains `λ`.
pub fn irr_over(
    g: &Group,
    gt: &CharacterTable,
    n: &Group,
    nt: &CharacterTable,
    lambda: &ClassFunction,
) -> Result<Vec<usize>> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let fusion = n.class_fusion(g)?;
    let mut out = Vec::new();
    for chi in 0..gt.len() {
        if nt.multiplicity(&restrict(&gt.character(chi), &fusion), lambda)? != 0 {
            out.push(chi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect()).unwrap()
    }

    fn ints(f: &[Cyclo]) -> Vec<i64> {
        f.iter().map(|v| v.as_integer().unwrap()).collect()
    }

    #[test]
    fn cyclic_three() {
        let c3 = group(3, &["(1 2 3)"]);
        let t = CharacterTable::compute(&c3).unwrap();
        assert_eq!(t.len(), 3);
        let z = Cyclo::root_power(3, 1);
        let z2 = Cyclo::root_power(3, 2);
        let one = Cyclo::one(3);
        assert_eq!(t.row(0), &[one.clone(), one.clone(), one.clone()]);
        let mut rest: Vec<Vec<Cyclo>> = vec![t.row(1).to_vec(), t.row(2).to_vec()];
        rest.sort_by_key(|r| r[1].coeffs().to_vec());
        let expected_a = vec![one.clone(), z.clone(), z2.clone()];
        let expected_b = vec![one.clone(), z2.clone(), z.clone()];
        assert!(rest.contains(&expected_a) && rest.contains(&expected_b));
    }

    #[test]
    fn symmetric_three() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = CharacterTable::compute(&s3).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(ints(t.row(0)), vec![1, 1, 1]);
        assert_eq!(ints(t.row(1)), vec![1, -1, 1]);
        assert_eq!(ints(t.row(2)), vec![2, 0, -1]);
    }

    #[test]
    fn trivial_group() {
        let t = CharacterTable::compute(&Group::trivial(1)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn restriction_and_induction_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let a3 = group(3, &["(1 2 3)"]);
        let ts = CharacterTable::compute(&s3).unwrap();
        let ta = CharacterTable::compute(&a3).unwrap();
        let fusion = a3.class_fusion(&s3).unwrap();

        let res2 = restrict(&ts.character(2), &fusion);
        assert_eq!(ta.decompose(&res2).unwrap(), vec![0, 1, 1]);
        let res_sign = restrict(&ts.character(1), &fusion);
        assert_eq!(ta.find(&res_sign), Some(0));
        assert_eq!(ta.find(&restrict(&ts.character(0), &fusion)), Some(0));

        let ind = induce(&ta.character(1), &a3, &s3, &fusion).unwrap();
        assert_eq!(ints(&ind), vec![2, 0, -1]);
        assert_eq!(ts.multiplicity(&ind, &ind).unwrap(), 1);
        let ind_trivial = induce(&ta.character(0), &a3, &s3, &fusion).unwrap();
        assert_eq!(ts.decompose(&ind_trivial).unwrap(), vec![1, 1, 0]);

        let same = induce(&ts.character(2), &s3, &s3, &s3.class_fusion(&s3).unwrap()).unwrap();
        assert_eq!(same, ts.character(2));
    }

    #[test]
    fn kernels() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = CharacterTable::compute(&s3).unwrap();
        assert_eq!(t.kernel(&s3, 0).order(), 6);
        assert_eq!(t.kernel(&s3, 1).order(), 3);
        assert_eq!(t.kernel(&s3, 2).order(), 1);
    }

    #[test]
    fn characters_over_a_normal_subgroup() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let a3 = group(3, &["(1 2 3)"]);
        let ts = CharacterTable::compute(&s3).unwrap();
        let ta = CharacterTable::compute(&a3).unwrap();
        assert_eq!(irr_over(&s3, &ts, &a3, &ta, &ta.character(1)).unwrap(), vec![2]);
        assert_eq!(irr_over(&s3, &ts, &a3, &ta, &ta.character(0)).unwrap(), vec![0, 1]);
        let triv = Group::trivial(3);
        let tt = CharacterTable::compute(&triv).unwrap();
        assert_eq!(irr_over(&s3, &ts, &triv, &tt, &tt.character(0)).unwrap(), vec![0, 1, 2]);
        let c2 = group(3, &["(1 2)"]);
        let tc = CharacterTable::compute(&c2).unwrap();
        assert_eq!(irr_over(&s3, &ts, &c2, &tc, &tc.character(0)), Err(Error::NotNormal));
    }

    #[test]
    fn inner_products() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let t = CharacterTable::compute(&s4).unwrap();
        for a in 0..t.len() {
            for b in 0..t.len() {
                let ip = t.multiplicity(&t.character(a), &t.character(b)).unwrap();
                assert_eq!(ip, (a == b) as i64);
            }
        }
        let reg = t.regular_character();
        assert_eq!(t.multiplicity(&reg, &t.character(0)).unwrap(), 1);
    }
}
