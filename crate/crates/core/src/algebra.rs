//! Finite-dimensional commutative `F_p`-algebras presented by structure
//! constants, together with algebra maps between them.
//!
//! Every constructor verifies commutativity, associativity, and the unit law
//! exhaustively on basis tuples, so an existing [`FiniteAlgebra`] value is
//! always a genuine commutative unital algebra.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::field::{is_supported_prime, FieldError, Fp};
use crate::poly::Polynomial;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("structure constant table has wrong shape")]
    BadShape,
    #[error("mixed prime moduli: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("multiplication not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("multiplication not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    UnitLawFails(usize),
    #[error("ideal generator has unsupported shape: {0}")]
    UnsupportedGenerator(String),
    #[error("variable {0} has no reduction rule, so the quotient is infinite-dimensional")]
    InfiniteDimensional(String),
    #[error("variable {0} has more than one reduction rule")]
    ConflictingRules(String),
    #[error("quotient dimension {0} exceeds the supported bound {1}")]
    DimensionTooLarge(usize, usize),
    #[error("algebra map has wrong matrix shape")]
    BadMapShape,
}

/// A finite-dimensional commutative unital algebra over `F_p`, given by a
/// basis and structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u32,
    dim: usize,
    basis: Vec<String>,
    /// `table[i][j]` is the coordinate vector of `e_i * e_j`.
    table: Vec<Vec<Vec<Fp>>>,
    unit: Vec<Fp>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteAlgebra(dim {} over F_{}, basis [{}])",
            self.dim,
            self.p,
            self.basis.join(", ")
        )
    }
}

impl FiniteAlgebra {
    /// Builds an algebra and exhaustively verifies commutativity,
    /// associativity, and the unit law.
    pub fn new(
        p: u32,
        basis: Vec<String>,
        table: Vec<Vec<Vec<Fp>>>,
        unit: Vec<Fp>,
    ) -> Result<Self, AlgebraError> {
        if !is_supported_prime(p) {
            return Err(FieldError::UnsupportedModulus(p).into());
        }
        let dim = basis.len();
        if dim == 0 || table.len() != dim || unit.len() != dim {
            return Err(AlgebraError::BadShape);
        }
        for row in &table {
            if row.len() != dim {
                return Err(AlgebraError::BadShape);
            }
            for v in row {
                if v.len() != dim || v.iter().any(|c| c.modulus() != p) {
                    return Err(AlgebraError::BadShape);
                }
            }
        }
        if unit.iter().any(|c| c.modulus() != p) {
            return Err(AlgebraError::BadShape);
        }
        let alg = FiniteAlgebra {
            p,
            dim,
            basis,
            table,
            unit,
        };
        alg.verify_laws()?;
        Ok(alg)
    }

    fn verify_laws(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            for j in 0..i {
                if self.table[i][j] != self.table[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            if self.mul(&self.unit, &e) != e {
                return Err(AlgebraError::UnitLawFails(i));
            }
        }
        // Associativity sweep on a sparse view of the table; the algebras
        // built here have few nonzero structure constants per product.
        let sparse: Vec<Vec<Vec<(usize, Fp)>>> = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, *c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let expand = |factors: &[(usize, Fp)], other: usize, left_side: bool| {
            let mut acc: Vec<(usize, Fp)> = Vec::new();
            for &(m, c) in factors {
                let row = if left_side {
                    &sparse[m][other]
                } else {
                    &sparse[other][m]
                };
                for &(t, d) in row {
                    match acc.iter_mut().find(|(idx, _)| *idx == t) {
                        Some((_, coeff)) => *coeff = *coeff + c * d,
                        None => acc.push((t, c * d)),
                    }
                }
            }
            acc.retain(|(_, c)| !c.is_zero());
            acc.sort_by_key(|(idx, _)| *idx);
            acc
        };
        for (i, row) in sparse.iter().enumerate() {
            for (j, ij) in row.iter().enumerate() {
                for (k, jk) in sparse[j].iter().enumerate() {
                    let left = expand(ij, k, true);
                    let right = expand(jk, i, false);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground field `F_p` as a one-dimensional algebra.
    pub fn ground(p: u32) -> Result<Self, AlgebraError> {
        FiniteAlgebra::new(
            p,
            vec!["1".to_string()],
            vec![vec![vec![Fp::one(p)]]],
            vec![Fp::one(p)],
        )
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn unit_vec(&self) -> &[Fp] {
        &self.unit
    }

    pub fn zero_vec(&self) -> Vec<Fp> {
        vec![Fp::zero(self.p); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Fp> {
        let mut v = self.zero_vec();
        v[i] = Fp::one(self.p);
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Fp] {
        &self.table[i][j]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = self.zero_vec();
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = *ca * *cb;
                for (k, entry) in self.table[i][j].iter().enumerate() {
                    if !entry.is_zero() {
                        out[k] = out[k] + c * *entry;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        a.iter().zip(b).map(|(x, y)| *x + *y).collect()
    }

    pub fn scale(&self, c: Fp, v: &[Fp]) -> Vec<Fp> {
        v.iter().map(|x| c * *x).collect()
    }

    pub fn pow(&self, v: &[Fp], e: u32) -> Vec<Fp> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, v);
        }
        acc
    }

    pub fn is_nilpotent(&self, v: &[Fp]) -> bool {
        // In a commutative algebra of dimension n, v nilpotent implies
        // v^n = 0.
        self.pow(v, self.dim as u32).iter().all(Fp::is_zero)
    }
}

/// A linear map between finite algebras, stored column-wise: `columns[j]` is
/// the image of the `j`-th source basis vector.
///
/// Construction only validates shapes; the homomorphism property is the
/// business of [`check_algebra_map`].
#[derive(Clone)]
pub struct AlgebraMap {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    columns: Vec<Vec<Fp>>,
}

impl AlgebraMap {
    pub fn new(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        columns: Vec<Vec<Fp>>,
    ) -> Result<Self, AlgebraError> {
        if source.modulus() != target.modulus() {
            return Err(AlgebraError::PrimeMismatch(
                source.modulus(),
                target.modulus(),
            ));
        }
        if columns.len() != source.dim()
            || columns
                .iter()
                .any(|c| c.len() != target.dim() || c.iter().any(|x| x.modulus() != source.modulus()))
        {
            return Err(AlgebraError::BadMapShape);
        }
        Ok(AlgebraMap {
            source,
            target,
            columns,
        })
    }

    pub fn identity(a: &FiniteAlgebra) -> Self {
        let columns = (0..a.dim()).map(|i| a.basis_vec(i)).collect();
        AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            columns,
        }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn columns(&self) -> &[Vec<Fp>] {
        &self.columns
    }

    pub fn apply(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.source.dim());
        let mut out = self.target.zero_vec();
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, entry) in self.columns[j].iter().enumerate() {
                if !entry.is_zero() {
                    out[r] = out[r] + *c * *entry;
                }
            }
        }
        out
    }

    /// Composition `next . self` (apply `self` first).
    pub fn then(&self, next: &AlgebraMap) -> Result<AlgebraMap, AlgebraError> {
        if self.target.dim() != next.source.dim() || self.target.modulus() != next.source.modulus()
        {
            return Err(AlgebraError::BadMapShape);
        }
        let columns = self.columns.iter().map(|c| next.apply(c)).collect();
        AlgebraMap::new(self.source.clone(), next.target.clone(), columns)
    }

    /// Whether the matrix is invertible over `F_p`.
    pub fn is_bijective(&self) -> bool {
        if self.source.dim() != self.target.dim() {
            return false;
        }
        let n = self.source.dim();
        let p = self.source.modulus();
        // Gaussian elimination on a copy of the column matrix.
        let mut m: Vec<Vec<Fp>> = (0..n)
            .map(|r| (0..n).map(|c| self.columns[c][r]).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot else { continue };
            m.swap(rank, pr);
            let inv = m[rank][col].inv().expect("pivot nonzero");
            for entry in &mut m[rank] {
                *entry = *entry * inv;
            }
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col];
                    let pivot_row = m[rank].clone();
                    for (entry, pv) in m[r].iter_mut().zip(&pivot_row) {
                        *entry = *entry - f * *pv;
                    }
                }
            }
            rank += 1;
        }
        let _ = p;
        rank == n
    }
}

impl fmt::Debug for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraMap({}-dim -> {}-dim over F_{})",
            self.source.dim(),
            self.target.dim(),
            self.source.modulus()
        )
    }
}

/// Outcome of [`check_algebra_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapVerdict {
    Valid,
    UnitNotPreserved,
    /// First basis pair on which multiplicativity fails.
    NotMultiplicativeAt {
        left: usize,
        right: usize,
    },
}

impl MapVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, MapVerdict::Valid)
    }
}

/// Checks that `f` preserves the unit and is multiplicative on every basis
/// pair. Returns the first violation found.
pub fn check_algebra_map(f: &AlgebraMap) -> MapVerdict {
    if f.apply(f.source.unit_vec()) != f.target.unit_vec() {
        return MapVerdict::UnitNotPreserved;
    }
    for i in 0..f.source.dim() {
        let fi = &f.columns[i];
        for j in 0..f.source.dim() {
            let lhs = f.apply(f.source.basis_product(i, j));
            let rhs = f.target.mul(fi, &f.columns[j]);
            if lhs != rhs {
                return MapVerdict::NotMultiplicativeAt { left: i, right: j };
            }
        }
    }
    MapVerdict::Valid
}

/// Tensor product of algebras. Basis pairs `(i, j)` are flattened to
/// `i * dim(b) + j`; structure constants are componentwise products.
pub fn algebra_tensor(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    if a.modulus() != b.modulus() {
        return Err(AlgebraError::PrimeMismatch(a.modulus(), b.modulus()));
    }
    let p = a.modulus();
    let (na, nb) = (a.dim(), b.dim());
    let dim = na * nb;
    let mut basis = Vec::with_capacity(dim);
    for la in a.basis_labels() {
        for lb in b.basis_labels() {
            basis.push(format!("{la}⊗{lb}"));
        }
    }
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let pa = a.basis_product(i1, i2);
                    let pb = b.basis_product(j1, j2);
                    let mut v = vec![Fp::zero(p); dim];
                    for (ka, ca) in pa.iter().enumerate() {
                        if ca.is_zero() {
                            continue;
                        }
                        for (kb, cb) in pb.iter().enumerate() {
                            if !cb.is_zero() {
                                v[ka * nb + kb] = *ca * *cb;
                            }
                        }
                    }
                    table[i1 * nb + j1][i2 * nb + j2] = v;
                }
            }
        }
    }
    let mut unit = vec![Fp::zero(p); dim];
    for (ka, ca) in a.unit_vec().iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (kb, cb) in b.unit_vec().iter().enumerate() {
            if !cb.is_zero() {
                unit[ka * nb + kb] = *ca * *cb;
            }
        }
    }
    FiniteAlgebra::new(p, basis, table, unit)
}

/// Applies `f ⊗ g` to a vector indexed by flattened source pairs, without
/// materializing the tensor-product map. `f` and `g` are given column-wise;
/// the result is indexed by flattened target pairs.
pub(crate) fn tensor_apply(
    f_cols: &[Vec<Fp>],
    g_cols: &[Vec<Fp>],
    v: &[Fp],
    p: u32,
) -> Vec<Fp> {
    let (fs, gs) = (f_cols.len(), g_cols.len());
    assert_eq!(v.len(), fs * gs);
    let ft = f_cols.first().map(|c| c.len()).unwrap_or(0);
    let gt = g_cols.first().map(|c| c.len()).unwrap_or(0);
    let mut out = vec![Fp::zero(p); ft * gt];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (idx / gs, idx % gs);
        for (r, fr) in f_cols[i].iter().enumerate() {
            if fr.is_zero() {
                continue;
            }
            let cf = *c * *fr;
            for (s, gsv) in g_cols[j].iter().enumerate() {
                if !gsv.is_zero() {
                    out[r * gt + s] = out[r * gt + s] + cf * *gsv;
                }
            }
        }
    }
    out
}

/// Identity column matrix of dimension `n`.
pub(crate) fn identity_cols(n: usize, p: u32) -> Vec<Vec<Fp>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Fp::zero(p); n];
            v[i] = Fp::one(p);
            v
        })
        .collect()
}

#[derive(Clone, Debug)]
enum ReduceTo {
    Zero,
    Term(Fp, u32),
}

#[derive(Clone, Debug)]
struct Rule {
    exponent: u32,
    target: ReduceTo,
}

/// A quotient `F_p[vars] / ideal` by an ideal generated by pure powers
/// `x^k` and same-variable binomials `x^k - c x^j` (`j < k`), presented on
/// its monomial basis.
#[derive(Clone, Debug)]
pub struct MonomialQuotient {
    algebra: FiniteAlgebra,
    vars: Vec<String>,
    exponents: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    rules: Vec<Rule>,
}

const MAX_QUOTIENT_DIM: usize = 4096;

/// Builds the quotient algebra `F_p[vars] / (gens)` for supported generator
/// shapes. The basis is the set of monomials below each variable's rule
/// exponent, ordered by total degree then lexicographically.
pub fn quotient_algebra(
    gens: &[Polynomial],
    vars: &[&str],
    p: u32,
) -> Result<MonomialQuotient, AlgebraError> {
    if !is_supported_prime(p) {
        return Err(FieldError::UnsupportedModulus(p).into());
    }
    let var_names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let mut rules: Vec<Option<Rule>> = vec![None; vars.len()];
    for g in gens {
        if g.modulus() != p {
            return Err(AlgebraError::PrimeMismatch(g.modulus(), p));
        }
        if g.variables() != var_names.as_slice() {
            return Err(AlgebraError::UnsupportedGenerator(format!(
                "generator {g} not over the requested variable list"
            )));
        }
        let (var_idx, rule) = parse_generator(g)?;
        if rules[var_idx].is_some() {
            return Err(AlgebraError::ConflictingRules(var_names[var_idx].clone()));
        }
        rules[var_idx] = Some(rule);
    }
    let mut fixed_rules = Vec::with_capacity(vars.len());
    for (i, r) in rules.into_iter().enumerate() {
        match r {
            Some(rule) => fixed_rules.push(rule),
            None => return Err(AlgebraError::InfiniteDimensional(var_names[i].clone())),
        }
    }
    let mut dim: usize = 1;
    for r in &fixed_rules {
        dim = dim.saturating_mul(r.exponent as usize);
        if dim > MAX_QUOTIENT_DIM {
            return Err(AlgebraError::DimensionTooLarge(dim, MAX_QUOTIENT_DIM));
        }
    }
    if dim == 0 {
        return Err(AlgebraError::UnsupportedGenerator(
            "generator with exponent zero".to_string(),
        ));
    }

    // Monomial basis, graded then lexicographic.
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for r in &fixed_rules {
        let mut next = Vec::new();
        for e in &exps {
            for k in 0..r.exponent {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        exps = next;
    }
    exps.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    let index: BTreeMap<Vec<u32>, usize> =
        exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

    let reduce = |mut e: Vec<u32>| -> Option<(Fp, Vec<u32>)> {
        let mut coeff = Fp::one(p);
        for (i, r) in fixed_rules.iter().enumerate() {
            while e[i] >= r.exponent {
                match &r.target {
                    ReduceTo::Zero => return None,
                    ReduceTo::Term(c, j) => {
                        e[i] = e[i] - r.exponent + j;
                        coeff = coeff * *c;
                    }
                }
            }
        }
        Some((coeff, e))
    };

    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (a, ea) in exps.iter().enumerate() {
        for (b, eb) in exps.iter().enumerate() {
            let sum: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let mut v = vec![Fp::zero(p); dim];
            if let Some((c, e)) = reduce(sum) {
                v[index[&e]] = c;
            }
            table[a][b] = v;
        }
    }
    let mut unit = vec![Fp::zero(p); dim];
    unit[index[&vec![0u32; vars.len()]]] = Fp::one(p);

    let basis = exps.iter().map(|e| monomial_label(&var_names, e)).collect();
    let algebra = FiniteAlgebra::new(p, basis, table, unit)?;
    Ok(MonomialQuotient {
        algebra,
        vars: var_names,
        exponents: exps,
        index,
        rules: fixed_rules,
    })
}

fn monomial_label(vars: &[String], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn parse_generator(g: &Polynomial) -> Result<(usize, Rule), AlgebraError> {
    let unsupported = || AlgebraError::UnsupportedGenerator(g.to_string());
    let terms: Vec<(Vec<u32>, Fp)> = g.terms().map(|(e, c)| (e.clone(), *c)).collect();
    let pure_power = |e: &[u32]| -> Option<Option<(usize, u32)>> {
        let nz: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        match nz.len() {
            0 => Some(None),
            1 => Some(Some((nz[0], e[nz[0]]))),
            _ => None,
        }
    };
    match terms.len() {
        1 => {
            let (e, _c) = &terms[0];
            match pure_power(e).ok_or_else(unsupported)? {
                Some((var, k)) if k >= 1 => Ok((
                    var,
                    Rule {
                        exponent: k,
                        target: ReduceTo::Zero,
                    },
                )),
                _ => Err(unsupported()),
            }
        }
        2 => {
            let p0 = pure_power(&terms[0].0).ok_or_else(unsupported)?;
            let p1 = pure_power(&terms[1].0).ok_or_else(unsupported)?;
            // Decide which term leads (larger exponent); the other becomes
            // the reduction target.
            let (lead, tail) = match (&p0, &p1) {
                (Some((v0, k0)), Some((v1, k1))) => {
                    if v0 != v1 {
                        return Err(unsupported());
                    }
                    if k0 > k1 {
                        (0, 1)
                    } else {
                        (1, 0)
                    }
                }
                (Some(_), None) => (0, 1),
                (None, Some(_)) => (1, 0),
                (None, None) => return Err(unsupported()),
            };
            let (var, k) = match pure_power(&terms[lead].0).unwrap() {
                Some(vk) => vk,
                None => return Err(unsupported()),
            };
            let j = terms[tail].0[var];
            let c_lead = terms[lead].1;
            let c_tail = terms[tail].1;
            // c_lead x^k + c_tail x^j = 0  =>  x^k = (-c_tail / c_lead) x^j
            let c = -(c_tail * c_lead.inv().expect("nonzero stored coefficient"));
            Ok((
                var,
                Rule {
                    exponent: k,
                    target: ReduceTo::Term(c, j),
                },
            ))
        }
        _ => Err(unsupported()),
    }
}

impl MonomialQuotient {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn basis_exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Coordinates of the residue class of `poly`.
    pub fn element_of_poly(&self, poly: &Polynomial) -> Result<Vec<Fp>, AlgebraError> {
        let p = self.algebra.modulus();
        if poly.modulus() != p {
            return Err(AlgebraError::PrimeMismatch(poly.modulus(), p));
        }
        if poly.variables() != self.vars.as_slice() {
            return Err(AlgebraError::UnsupportedGenerator(format!(
                "polynomial {poly} not over the quotient's variables"
            )));
        }
        let mut out = self.algebra.zero_vec();
        for (e, c) in poly.terms() {
            let mut exp = e.clone();
            let mut coeff = *c;
            let mut zero = false;
            for (i, r) in self.rules.iter().enumerate() {
                while exp[i] >= r.exponent {
                    match &r.target {
                        ReduceTo::Zero => {
                            zero = true;
                            break;
                        }
                        ReduceTo::Term(rc, j) => {
                            exp[i] = exp[i] - r.exponent + j;
                            coeff = coeff * *rc;
                        }
                    }
                }
                if zero {
                    break;
                }
            }
            if !zero {
                let idx = self.index[&exp];
                out[idx] = out[idx] + coeff;
            }
        }
        Ok(out)
    }

    /// Builds the algebra map determined by images of the quotient's
    /// generators (one image per variable), verifying that the images
    /// satisfy each variable's defining relation in the target.
    pub fn map_from_generator_images(
        &self,
        target: &FiniteAlgebra,
        images: &[Vec<Fp>],
    ) -> Result<AlgebraMap, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::BadMapShape);
        }
        for (i, r) in self.rules.iter().enumerate() {
            let lhs = target.pow(&images[i], r.exponent);
            let rhs = match &r.target {
                ReduceTo::Zero => target.zero_vec(),
                ReduceTo::Term(c, j) => target.scale(*c, &target.pow(&images[i], *j)),
            };
            if lhs != rhs {
                return Err(AlgebraError::UnsupportedGenerator(format!(
                    "image of generator {} violates its defining relation",
                    self.vars[i]
                )));
            }
        }
        let columns = self
            .exponents
            .iter()
            .map(|e| {
                let mut v = target.unit_vec().to_vec();
                for (img, &k) in images.iter().zip(e) {
                    for _ in 0..k {
                        v = target.mul(&v, img);
                    }
                }
                v
            })
            .collect();
        AlgebraMap::new(self.algebra.clone(), target.clone(), columns)
    }
}
