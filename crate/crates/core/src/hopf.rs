//! Finite group schemes over `F_p` presented as Hopf algebras.
//!
//! Three families cover everything this crate needs: the Frobenius kernel
//! `alpha_p` (carrier `k[T]/T^p`, `T` primitive), the multiplicative kernels
//! `mu_n` (carrier `k[T]/(T^n - 1)`, `T` grouplike), and constant group
//! schemes of finite groups (carrier the functions on the group).

use std::fmt;
use thiserror::Error;

use crate::algebra::{
    algebra_tensor, check_algebra_map, identity_cols, quotient_algebra, tensor_apply,
    AlgebraError, AlgebraMap, FiniteAlgebra,
};
use crate::field::{is_supported_prime, FieldError, Fp};
use crate::poly::Polynomial;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum HopfError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polynomial(#[from] crate::poly::PolynomialError),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("operation requires a constant group scheme")]
    NotConstant,
    #[error("mu_n requires n >= 1")]
    BadMuOrder,
    #[error("constructed Hopf structure failed its own axioms: {0}")]
    AxiomFailure(String),
}

/// Multiplication table of a finite group on indices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order {})", self.order())
    }
}

impl GroupTable {
    /// Validates closure, associativity, identity, and inverses.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = mul.len();
        if n == 0 {
            return Err(HopfError::NotAGroup("empty table".to_string()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(HopfError::NotAGroup("table is not square on 0..n".to_string()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| HopfError::NotAGroup("no identity element".to_string()))?;
        for (g, row) in mul.iter().enumerate() {
            if !(0..n).any(|h| row[h] == identity && mul[h][g] == identity) {
                return Err(HopfError::NotAGroup(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(HopfError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { mul, identity })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.mul[g][h] == self.identity)
            .expect("validated group has inverses")
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(mul).expect("cyclic table is a group")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let idx = |x: usize, y: usize| x * nb + y;
        let mut mul = vec![vec![0; na * nb]; na * nb];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        mul[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        GroupTable::new(mul).expect("product table is a group")
    }

    /// Dihedral group of order `2n`: rotations `r^i` and reflections
    /// `r^i s`, encoded as `i + n*j` with `j` the reflection bit.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let idx = |i: usize, j: usize| i + n * j;
        let mut mul = vec![vec![0; 2 * n]; 2 * n];
        for i1 in 0..n {
            for j1 in 0..2 {
                for i2 in 0..n {
                    for j2 in 0..2 {
                        // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                        let rot = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
                        mul[idx(i1, j1)][idx(i2, j2)] = idx(rot, (j1 + j2) % 2);
                    }
                }
            }
        }
        GroupTable::new(mul).expect("dihedral table is a group")
    }

    /// The quaternion group of order 8: `{±1, ±i, ±j, ±k}` encoded as
    /// `axis + 4*sign` with axes `1, i, j, k`.
    pub fn quaternion8() -> Self {
        // product of axes -> (sign flip, axis)
        let axis_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) => (0, x),
                (x, 0) => (0, x),
                (1, 1) | (2, 2) | (3, 3) => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let mut mul = vec![vec![0; 8]; 8];
        for a in 0..4 {
            for sa in 0..2 {
                for b in 0..4 {
                    for sb in 0..2 {
                        let (flip, axis) = axis_mul(a, b);
                        let sign = (sa + sb + flip) % 2;
                        mul[a + 4 * sa][b + 4 * sb] = axis + 4 * sign;
                    }
                }
            }
        }
        GroupTable::new(mul).expect("quaternion table is a group")
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let n = self.order();
        if subset.is_empty() || subset.iter().any(|&g| g >= n) {
            return false;
        }
        let mut members = vec![false; n];
        for &g in subset {
            members[g] = true;
        }
        if !members[self.identity] {
            return false;
        }
        subset.iter().all(|&a| {
            members[self.inverse(a)] && subset.iter().all(|&b| members[self.mul(a, b)])
        })
    }

    /// All subgroups, each sorted ascending, in deterministic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        assert!(n <= 16, "subgroup enumeration is for small groups");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&g| mask >> g & 1 == 1).collect();
            if !subset.is_empty() && self.is_subgroup(&subset) {
                out.push(subset);
            }
        }
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }

    /// Left cosets `gH`, each sorted, ordered by minimal representative.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            coset.dedup();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

/// The supported kinds of finite group scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSchemeKind {
    /// Frobenius kernel of the additive group; infinitesimal of order `p`.
    AlphaP { p: u32 },
    /// Kernel of `t -> t^n` on the multiplicative group; etale iff `p` does
    /// not divide `n`.
    MuN { n: u32, p: u32 },
    /// Constant group scheme of a finite group; always etale.
    Constant { table: GroupTable, p: u32 },
}

impl GroupSchemeKind {
    pub fn modulus(&self) -> u32 {
        match self {
            GroupSchemeKind::AlphaP { p }
            | GroupSchemeKind::MuN { p, .. }
            | GroupSchemeKind::Constant { p, .. } => *p,
        }
    }

    pub fn is_etale(&self) -> bool {
        match self {
            GroupSchemeKind::AlphaP { .. } => false,
            GroupSchemeKind::MuN { n, p } => n % p != 0,
            GroupSchemeKind::Constant { .. } => true,
        }
    }
}

/// A finite commutative-carrier Hopf algebra: the coordinate ring of a
/// finite group scheme.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub kind: GroupSchemeKind,
    pub carrier: FiniteAlgebra,
    /// `carrier -> carrier ⊗ carrier`
    pub comult: AlgebraMap,
    /// `carrier -> F_p`
    pub counit: AlgebraMap,
    /// `carrier -> carrier`
    pub antipode: AlgebraMap,
}

/// Per-axiom outcome of [`HopfAlgebra::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAxiomReport {
    pub comult_algebra_map: bool,
    pub counit_algebra_map: bool,
    pub antipode_algebra_map: bool,
    pub coassociative: bool,
    pub counital: bool,
    pub antipode_law: bool,
}

impl HopfAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.comult_algebra_map
            && self.counit_algebra_map
            && self.antipode_algebra_map
            && self.coassociative
            && self.counital
            && self.antipode_law
    }
}

impl HopfAlgebra {
    /// Exhaustive basis check of coassociativity, the counit law, the
    /// antipode law, and the algebra-map property of all three structure
    /// maps.
    pub fn check_axioms(&self) -> HopfAxiomReport {
        let a = &self.carrier;
        let p = a.modulus();
        let n = a.dim();
        let id = identity_cols(n, p);
        let delta = self.comult.columns();
        let eps = self.counit.columns();
        let s = self.antipode.columns();

        let mut coassociative = true;
        let mut counital = true;
        let mut antipode_law = true;
        for c in 0..n {
            let u = &delta[c];
            // (Δ⊗id)Δ = (id⊗Δ)Δ, compared in the flat basis of A⊗A⊗A.
            let lhs = tensor_apply(delta, &id, u, p);
            let rhs = tensor_apply(&id, delta, u, p);
            if lhs != rhs {
                coassociative = false;
            }
            // (ε⊗id)Δ = id = (id⊗ε)Δ under k⊗A ≅ A ≅ A⊗k.
            let e_c = a.basis_vec(c);
            if tensor_apply(eps, &id, u, p) != e_c || tensor_apply(&id, eps, u, p) != e_c {
                counital = false;
            }
            // m(S⊗id)Δ = uε = m(id⊗S)Δ.
            let expected = a.scale(eps[c][0], a.unit_vec());
            for w in [tensor_apply(s, &id, u, p), tensor_apply(&id, s, u, p)] {
                let mut prod = a.zero_vec();
                for (idx, coeff) in w.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (i, j) = (idx / n, idx % n);
                    for (k, t) in a.basis_product(i, j).iter().enumerate() {
                        if !t.is_zero() {
                            prod[k] = prod[k] + *coeff * *t;
                        }
                    }
                }
                if prod != expected {
                    antipode_law = false;
                }
            }
        }
        HopfAxiomReport {
            comult_algebra_map: check_algebra_map(&self.comult).is_valid(),
            counit_algebra_map: check_algebra_map(&self.counit).is_valid(),
            antipode_algebra_map: check_algebra_map(&self.antipode).is_valid(),
            coassociative,
            counital,
            antipode_law,
        }
    }
}

/// Builds the Hopf algebra of a group scheme kind and verifies all axioms.
pub fn hopf_of(kind: &GroupSchemeKind) -> Result<HopfAlgebra, HopfError> {
    let p = kind.modulus();
    if !is_supported_prime(p) {
        return Err(FieldError::UnsupportedModulus(p).into());
    }
    let hopf = match kind {
        GroupSchemeKind::AlphaP { p } => alpha_p_hopf(*p)?,
        GroupSchemeKind::MuN { n, p } => mu_n_hopf(*n, *p)?,
        GroupSchemeKind::Constant { table, p } => constant_hopf(table, *p)?,
    };
    let report = hopf.check_axioms();
    if !report.all_pass() {
        return Err(HopfError::AxiomFailure(format!("{report:?}")));
    }
    Ok(hopf)
}

fn alpha_p_hopf(p: u32) -> Result<HopfAlgebra, HopfError> {
    let t_pow_p = Polynomial::variable(p, &["T"], 0)?.pow(p);
    let q = quotient_algebra(&[t_pow_p], &["T"], p)?;
    let carrier = q.algebra().clone();
    let tensor = algebra_tensor(&carrier, &carrier)?;
    let n = carrier.dim();
    // Δ(T) = T⊗1 + 1⊗T (primitive); flat indices (1,0) and (0,1).
    let mut dt = tensor.zero_vec();
    dt[n] = Fp::one(p);
    dt[1] = Fp::one(p);
    let comult = q.map_from_generator_images(&tensor, &[dt])?;
    let ground = FiniteAlgebra::ground(p)?;
    let counit = q.map_from_generator_images(&ground, &[ground.zero_vec()])?;
    // S(T) = -T; in characteristic 2 this is the identity.
    let st = carrier.scale(-Fp::one(p), &carrier.basis_vec(1));
    let antipode = q.map_from_generator_images(&carrier, &[st])?;
    Ok(HopfAlgebra {
        kind: GroupSchemeKind::AlphaP { p },
        carrier,
        comult,
        counit,
        antipode,
    })
}

fn mu_n_hopf(n: u32, p: u32) -> Result<HopfAlgebra, HopfError> {
    if n == 0 {
        return Err(HopfError::BadMuOrder);
    }
    let one = Polynomial::constant(p, &["T"], 1)?;
    let gen = Polynomial::variable(p, &["T"], 0)?.pow(n).sub(&one);
    let q = quotient_algebra(&[gen], &["T"], p)?;
    let carrier = q.algebra().clone();
    let dim = carrier.dim();
    let tensor = algebra_tensor(&carrier, &carrier)?;
    // Δ(T) = T⊗T (grouplike).
    let t_idx = if dim == 1 { 0 } else { 1 };
    let mut dt = tensor.zero_vec();
    dt[t_idx * dim + t_idx] = Fp::one(p);
    let comult = q.map_from_generator_images(&tensor, &[dt])?;
    let ground = FiniteAlgebra::ground(p)?;
    let counit = q.map_from_generator_images(&ground, &[ground.unit_vec().to_vec()])?;
    // S(T) = T^(n-1).
    let st = carrier.pow(&carrier.basis_vec(t_idx), n - 1);
    let antipode = q.map_from_generator_images(&carrier, &[st])?;
    Ok(HopfAlgebra {
        kind: GroupSchemeKind::MuN { n, p },
        carrier,
        comult,
        counit,
        antipode,
    })
}

fn constant_hopf(table: &GroupTable, p: u32) -> Result<HopfAlgebra, HopfError> {
    let n = table.order();
    // Functions on G: idempotent basis δ_g, pointwise product, unit = Σ δ_g.
    let mut alg_table = vec![vec![Vec::new(); n]; n];
    for (a, row) in alg_table.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut v = vec![Fp::zero(p); n];
            if a == b {
                v[a] = Fp::one(p);
            }
            *slot = v;
        }
    }
    let basis = (0..n).map(|g| format!("d{g}")).collect();
    let unit = vec![Fp::one(p); n];
    let carrier = FiniteAlgebra::new(p, basis, alg_table, unit)?;
    let tensor = algebra_tensor(&carrier, &carrier)?;
    // Δ(δ_g) = Σ_{ab=g} δ_a ⊗ δ_b.
    let mut comult_cols = vec![tensor.zero_vec(); n];
    for a in 0..n {
        for b in 0..n {
            let g = table.mul(a, b);
            comult_cols[g][a * n + b] = Fp::one(p);
        }
    }
    let ground = FiniteAlgebra::ground(p)?;
    let comult = AlgebraMap::new(carrier.clone(), tensor, comult_cols)?;
    let counit_cols = (0..n)
        .map(|g| {
            vec![if g == table.identity() {
                Fp::one(p)
            } else {
                Fp::zero(p)
            }]
        })
        .collect();
    let counit = AlgebraMap::new(carrier.clone(), ground, counit_cols)?;
    let antipode_cols = (0..n).map(|g| carrier.basis_vec(table.inverse(g))).collect();
    let antipode = AlgebraMap::new(carrier.clone(), carrier.clone(), antipode_cols)?;
    Ok(HopfAlgebra {
        kind: GroupSchemeKind::Constant {
            table: table.clone(),
            p,
        },
        carrier,
        comult,
        counit,
        antipode,
    })
}

/// The invariant subalgebra `k[G]^H` of functions constant on left
/// `H`-cosets, with its inclusion into `k[G]`. Its dimension is `[G : H]`.
pub fn invariants_subalgebra(
    g: &HopfAlgebra,
    subgroup: &[usize],
) -> Result<(FiniteAlgebra, AlgebraMap), HopfError> {
    let GroupSchemeKind::Constant { table, p } = &g.kind else {
        return Err(HopfError::NotConstant);
    };
    let mut h: Vec<usize> = subgroup.to_vec();
    h.sort_unstable();
    h.dedup();
    if !table.is_subgroup(&h) {
        return Err(HopfError::NotASubgroup(format!("{h:?}")));
    }
    let cosets = table.left_cosets(&h);
    let m = cosets.len();
    // Coset indicator functions are orthogonal idempotents summing to 1.
    let mut sub_table = vec![vec![Vec::new(); m]; m];
    for (a, row) in sub_table.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut v = vec![Fp::zero(*p); m];
            if a == b {
                v[a] = Fp::one(*p);
            }
            *slot = v;
        }
    }
    let basis = cosets.iter().map(|c| format!("chi{}", c[0])).collect();
    let unit = vec![Fp::one(*p); m];
    let sub = FiniteAlgebra::new(*p, basis, sub_table, unit)?;
    let columns = cosets
        .iter()
        .map(|coset| {
            let mut v = g.carrier.zero_vec();
            for &x in coset {
                v[x] = Fp::one(*p);
            }
            v
        })
        .collect();
    let inclusion = AlgebraMap::new(sub.clone(), g.carrier.clone(), columns)?;
    Ok((sub, inclusion))
}

/// Recovers a constant group's multiplication table from the comultiplication
/// of its function Hopf algebra: the dual basis multiplies by
/// `x_a · x_b = x_{ab}`.
pub fn constant_dual_table(g: &HopfAlgebra) -> Result<GroupTable, HopfError> {
    let GroupSchemeKind::Constant { table, .. } = &g.kind else {
        return Err(HopfError::NotConstant);
    };
    let n = table.order();
    let cols = g.comult.columns();
    let mut mul = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut found = None;
            for (gidx, col) in cols.iter().enumerate() {
                if !col[a * n + b].is_zero() {
                    if found.is_some() {
                        return Err(HopfError::AxiomFailure(
                            "comultiplication is not a permutation pairing".to_string(),
                        ));
                    }
                    found = Some(gidx);
                }
            }
            mul[a][b] = found.ok_or_else(|| {
                HopfError::AxiomFailure("dual basis product vanishes".to_string())
            })?;
        }
    }
    GroupTable::new(mul)
}

/// A coaction of a group scheme on a finite algebra: a map
/// `V -> V ⊗ k[G]`.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub algebra: FiniteAlgebra,
    pub map: AlgebraMap,
}

/// Outcome of [`check_coaction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionReport {
    pub algebra_map: bool,
    pub coassociative: bool,
    pub counital: bool,
}

impl CoactionReport {
    pub fn all_pass(&self) -> bool {
        self.algebra_map && self.coassociative && self.counital
    }
}

/// Checks the comodule-algebra axioms: the structure map is an algebra map,
/// coassociates against the comultiplication, and is counital.
pub fn check_coaction(c: &Coaction, g: &HopfAlgebra) -> CoactionReport {
    let p = c.algebra.modulus();
    let nv = c.algebra.dim();
    let ng = g.carrier.dim();
    let rho = c.map.columns();
    let id_v = identity_cols(nv, p);
    let id_g = identity_cols(ng, p);
    let mut coassociative = rho.len() == nv && c.map.target().dim() == nv * ng;
    let mut counital = coassociative;
    if coassociative {
        for v in 0..nv {
            let u = &rho[v];
            // (ρ⊗id)ρ = (id⊗Δ)ρ in V⊗A⊗A.
            let lhs = tensor_apply(rho, &id_g, u, p);
            let rhs = tensor_apply(&id_v, g.comult.columns(), u, p);
            if lhs != rhs {
                coassociative = false;
            }
            // (id⊗ε)ρ = id.
            if tensor_apply(&id_v, g.counit.columns(), u, p) != c.algebra.basis_vec(v) {
                counital = false;
            }
        }
    }
    CoactionReport {
        algebra_map: check_algebra_map(&c.map).is_valid(),
        coassociative,
        counital,
    }
}
