//! Finite-dimensional unital algebras given by structure constants, and
//! elements of `A`, `A⊗A` and `A⊗A⊗A` over a coefficient ring.

use std::collections::BTreeMap;

use oqa_scalar::Scalar;

use crate::coeff::Coeff;
use crate::error::{OqaError, Result};

/// Which family an algebra belongs to; used for serialization and for the
/// matrix-unit fast paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Matrix { n: usize },
    Sweedler,
    Custom,
}

/// Sparse product table: `table[i][j]` lists `(k, c)` with `e_i e_j = Σ c e_k`.
type Table = Vec<Vec<Vec<(usize, Scalar)>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    kind: AlgebraKind,
    opposite: bool,
    labels: Vec<String>,
    table: Table,
    unit: Vec<Scalar>,
}

impl AlgebraSpec {
    /// `M_n(k)` with basis `E_ij` in row-major order.
    pub fn matrix(n: usize) -> AlgebraSpec {
        assert!(n >= 1, "matrix algebra needs n >= 1");
        let dim = n * n;
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    table[i * n + j][j * n + m] = vec![(i * n + m, Scalar::one())];
                }
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        let mut unit = vec![Scalar::zero(); dim];
        for i in 0..n {
            unit[i * n + i] = Scalar::one();
        }
        AlgebraSpec { kind: AlgebraKind::Matrix { n }, opposite: false, labels, table, unit }
    }

    /// Sweedler's four-dimensional algebra: basis `1, a, x, ax` with `a² = 1`, `x² = 0`, `xa = −ax`.
    pub fn sweedler() -> AlgebraSpec {
        let one = |k: usize| vec![(k, Scalar::one())];
        let minus = |k: usize| vec![(k, -Scalar::one())];
        let table: Table = vec![
            vec![one(0), one(1), one(2), one(3)],
            vec![one(1), one(0), one(3), one(2)],
            vec![one(2), minus(3), vec![], vec![]],
            vec![one(3), minus(2), vec![], vec![]],
        ];
        let labels = ["1", "a", "x", "ax"].iter().map(|s| s.to_string()).collect();
        let unit = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        AlgebraSpec { kind: AlgebraKind::Sweedler, opposite: false, labels, table, unit }
    }

    /// An algebra from dense structure constants `c[i][j][k]`; associativity and the unit are checked.
    pub fn custom(labels: Vec<String>, c: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<AlgebraSpec> {
        let dim = labels.len();
        if c.len() != dim || unit.len() != dim {
            return Err(OqaError::Dimension { expected: dim, found: c.len().min(unit.len()) });
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, row) in c.into_iter().enumerate() {
            if row.len() != dim {
                return Err(OqaError::Dimension { expected: dim, found: row.len() });
            }
            for (j, prod) in row.into_iter().enumerate() {
                if prod.len() != dim {
                    return Err(OqaError::Dimension { expected: dim, found: prod.len() });
                }
                table[i][j] = prod
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
            }
        }
        let alg = AlgebraSpec { kind: AlgebraKind::Custom, opposite: false, labels, table, unit };
        if let Some((i, j, k)) = alg.associativity_failure() {
            return Err(OqaError::Parameter(format!(
                "structure constants are not associative on ({}, {}, {})",
                alg.labels[i], alg.labels[j], alg.labels[k]
            )));
        }
        if !alg.unit_is_identity() {
            return Err(OqaError::Parameter("unit is not a two-sided identity".into()));
        }
        Ok(alg)
    }

    /// The opposite algebra `A^op` (same space, `x·y = yx`).
    pub fn opposite(&self) -> AlgebraSpec {
        let dim = self.dim();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.table[j][i].clone();
            }
        }
        AlgebraSpec {
            kind: self.kind.clone(),
            opposite: !self.opposite,
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `n` for a matrix algebra.
    pub fn matrix_size(&self) -> Option<usize> {
        match self.kind {
            AlgebraKind::Matrix { n } => Some(n),
            _ => None,
        }
    }

    /// Basis index of `E_ij` (0-based) in a matrix algebra.
    pub fn matrix_unit(&self, i: usize, j: usize) -> usize {
        let n = self.matrix_size().expect("matrix algebra");
        i * n + j
    }

    /// Expansion of `e_i e_j` in the basis.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Dense structure constants `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); dim];
                        for (k, c) in &self.table[i][j] {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Unit as a sparse list.
    pub fn unit_terms(&self) -> Vec<(usize, Scalar)> {
        self.unit
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }

    /// First basis triple on which `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.mul(&self.mul(&self.basis::<Scalar>(i), &self.basis(j)), &self.basis(k));
                    let right = self.mul(&self.basis::<Scalar>(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn unit_is_identity(&self) -> bool {
        let one = Element::from_scalars(self.unit.clone());
        (0..self.dim()).all(|i| {
            let e = self.basis::<Scalar>(i);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        })
    }

    pub fn basis<C: Coeff>(&self, i: usize) -> Element<C> {
        let mut v = vec![C::zero(); self.dim()];
        v[i] = C::one();
        Element { coeffs: v }
    }

    pub fn one<C: Coeff>(&self) -> Element<C> {
        Element { coeffs: self.unit.iter().map(|s| C::from_scalar(s.clone())).collect() }
    }

    pub fn mul<C: Coeff>(&self, x: &Element<C>, y: &Element<C>) -> Element<C> {
        let dim = self.dim();
        let mut out = vec![C::zero(); dim];
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi.mul(yj);
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].add(&xy.scale(c));
                }
            }
        }
        Element { coeffs: out }
    }

    /// Sparse product of basis-coefficient lists.
    pub fn mul_sparse<C: Coeff>(&self, x: &[(usize, C)], y: &[(usize, C)]) -> Vec<(usize, C)> {
        let mut acc: BTreeMap<usize, C> = BTreeMap::new();
        for (i, xi) in x {
            for (j, yj) in y {
                let table = &self.table[*i][*j];
                if table.is_empty() {
                    continue;
                }
                let xy = xi.mul(yj);
                for (k, c) in table {
                    accumulate(&mut acc, *k, xy.scale(c));
                }
            }
        }
        acc.into_iter().collect()
    }

    /// The inverse of an element, by solving `x·y = 1`.
    pub fn invert(&self, x: &Element<Scalar>) -> Result<Element<Scalar>> {
        let dim = self.dim();
        // Column j of the left-multiplication operator is x·e_j.
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim];
        for j in 0..dim {
            let col = self.mul(x, &self.basis::<Scalar>(j));
            for (r, c) in col.coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    rows[r].insert(j, c);
                }
            }
        }
        let sol = solve_sparse(rows, self.unit.clone(), dim)?;
        let y = Element::from_scalars(sol);
        if self.mul(&y, x) != self.one() {
            return Err(OqaError::Singular);
        }
        Ok(y)
    }
}

pub(crate) fn accumulate<C: Coeff, K: Ord>(acc: &mut BTreeMap<K, C>, key: K, value: C) {
    if value.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&value);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// An element of `A`: one coefficient per basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<C> {
    coeffs: Vec<C>,
}

pub type AlgebraElement = Element<Scalar>;

impl<C: Coeff> Element<C> {
    pub fn zero(dim: usize) -> Self {
        Element { coeffs: vec![C::zero(); dim] }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        Element { coeffs }
    }

    pub fn from_sparse(dim: usize, terms: &[(usize, C)]) -> Self {
        let mut e = Self::zero(dim);
        for (k, c) in terms {
            e.coeffs[*k] = e.coeffs[*k].add(c);
        }
        e
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Element { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Element { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Element { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn sparse(&self) -> Vec<(usize, C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }
}

impl Element<Scalar> {
    pub fn from_scalars(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn lift<D: Coeff>(&self) -> Element<D> {
        Element { coeffs: self.coeffs.iter().map(|c| D::from_scalar(c.clone())).collect() }
    }

    pub fn substitute(&self, bindings: &std::collections::HashMap<usize, Scalar>) -> Result<Self> {
        Ok(Element {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute(bindings))
                .collect::<std::result::Result<_, _>>()?,
        })
    }
}

/// An element `Σ c_ij e_i ⊗ e_j` of `A⊗A`, stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquare<C> {
    dim: usize,
    entries: BTreeMap<(usize, usize), C>,
}

pub type TensorSquareElement = TensorSquare<Scalar>;

impl<C: Coeff> TensorSquare<C> {
    pub fn zero(dim: usize) -> Self {
        TensorSquare { dim, entries: BTreeMap::new() }
    }

    pub fn one(alg: &AlgebraSpec) -> Self {
        let mut t = TensorSquare::zero(alg.dim());
        let unit = alg.unit_terms();
        for (i, a) in &unit {
            for (j, b) in &unit {
                t.add_term(*i, *j, C::from_scalar(a * b));
            }
        }
        t
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), C)>>(dim: usize, entries: I) -> Self {
        let mut t = TensorSquare::zero(dim);
        for ((i, j), c) in entries {
            t.add_term(i, j, c);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: C) {
        accumulate(&mut self.entries, (i, j), c);
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), C> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ c b ⊗ a` for `Σ c a ⊗ b`.
    pub fn flip(&self) -> Self {
        TensorSquare {
            dim: self.dim,
            entries: self.entries.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for ((i, j), c) in &other.entries {
            t.add_term(*i, *j, c.neg());
        }
        t
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TensorSquare<D> {
        TensorSquare::from_entries(self.dim, self.entries.iter().map(|(k, c)| (*k, f(c))))
    }

    /// First slot where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.sub(other).entries.keys().next().copied()
    }
}

impl TensorSquare<Scalar> {
    pub fn lift<D: Coeff>(&self) -> TensorSquare<D> {
        self.map_coeffs(|c| D::from_scalar(c.clone()))
    }

    pub fn substitute(&self, bindings: &std::collections::HashMap<usize, Scalar>) -> Result<Self> {
        let mut t = TensorSquare::zero(self.dim);
        for ((i, j), c) in &self.entries {
            t.add_term(*i, *j, c.substitute(bindings)?);
        }
        Ok(t)
    }
}

/// Product in `A⊗A`, or in `A⊗A^op` when `second_factor_opposite` is set.
pub fn tensor_mul<C: Coeff>(
    alg: &AlgebraSpec,
    u: &TensorSquare<C>,
    v: &TensorSquare<C>,
    second_factor_opposite: bool,
) -> TensorSquare<C> {
    let mut out = TensorSquare::zero(alg.dim());
    for ((i, j), cu) in &u.entries {
        for ((k, l), cv) in &v.entries {
            let first = alg.basis_product(*i, *k);
            if first.is_empty() {
                continue;
            }
            let second = if second_factor_opposite {
                alg.basis_product(*l, *j)
            } else {
                alg.basis_product(*j, *l)
            };
            if second.is_empty() {
                continue;
            }
            let c = cu.mul(cv);
            for (p, x) in first {
                for (q, y) in second {
                    out.add_term(*p, *q, c.scale(&(x * y)));
                }
            }
        }
    }
    out
}

/// Inverse in `A⊗A` by a sparse linear solve in the `dim²`-dimensional algebra; verified on both sides.
pub fn tensor_invert(alg: &AlgebraSpec, u: &TensorSquare<Scalar>) -> Result<TensorSquare<Scalar>> {
    let dim = alg.dim();
    let n = dim * dim;
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
    // Column (k, l) of the operator v ↦ u·v is u·(e_k ⊗ e_l).
    for ((i, j), c) in &u.entries {
        for k in 0..dim {
            let first = alg.basis_product(*i, k);
            if first.is_empty() {
                continue;
            }
            for l in 0..dim {
                for (p, x) in first {
                    for (q, y) in alg.basis_product(*j, l) {
                        let row = &mut rows[p * dim + q];
                        let v = c * &(x * y);
                        let col = k * dim + l;
                        let e = row.entry(col).or_insert_with(Scalar::zero);
                        *e = &*e + &v;
                        if e.is_zero() {
                            row.remove(&col);
                        }
                    }
                }
            }
        }
    }
    let one = TensorSquare::<Scalar>::one(alg);
    let mut rhs = vec![Scalar::zero(); n];
    for ((i, j), c) in &one.entries {
        rhs[i * dim + j] = c.clone();
    }
    let sol = solve_sparse(rows, rhs, n)?;
    let v = TensorSquare::from_entries(
        dim,
        sol.into_iter().enumerate().map(|(idx, c)| ((idx / dim, idx % dim), c)),
    );
    if tensor_mul(alg, u, &v, false) != one || tensor_mul(alg, &v, u, false) != one {
        return Err(OqaError::Singular);
    }
    Ok(v)
}

/// Solves a square sparse system exactly, choosing pivots that keep rows short.
fn solve_sparse(mut rows: Vec<BTreeMap<usize, Scalar>>, mut rhs: Vec<Scalar>, n: usize) -> Result<Vec<Scalar>> {
    let mut used = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut col_count = vec![0usize; n];
    for row in &rows {
        for c in row.keys() {
            col_count[*c] += 1;
        }
    }
    loop {
        let candidate = (0..rows.len())
            .filter(|&r| !used[r] && !rows[r].is_empty())
            .min_by_key(|&r| rows[r].len());
        let Some(r) = candidate else { break };
        let c = *rows[r]
            .keys()
            .min_by_key(|&&c| col_count[c])
            .expect("row is nonempty");
        used[r] = true;
        pivots.push((r, c));
        let pivot_row = rows[r].clone();
        let pivot = pivot_row[&c].clone();
        for other in 0..rows.len() {
            if used[other] {
                continue;
            }
            let Some(f) = rows[other].get(&c).cloned() else { continue };
            let factor = &f / &pivot;
            for (col, v) in &pivot_row {
                let entry = rows[other].entry(*col).or_insert_with(Scalar::zero);
                let was_zero = entry.is_zero();
                *entry = &*entry - &(&factor * v);
                if entry.is_zero() {
                    rows[other].remove(col);
                    col_count[*col] -= 1;
                } else if was_zero {
                    col_count[*col] += 1;
                }
            }
            rhs[other] = &rhs[other] - &(&factor * &rhs[r]);
        }
        for col in pivot_row.keys() {
            col_count[*col] -= 1;
        }
    }
    if pivots.len() < n || (0..rows.len()).any(|r| !used[r] && !rhs[r].is_zero()) {
        return Err(OqaError::Singular);
    }
    let mut x = vec![Scalar::zero(); n];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = rhs[r].clone();
        for (col, v) in &rows[r] {
            if *col != c {
                acc = &acc - &(v * &x[*col]);
            }
        }
        x[c] = &acc / &rows[r][&c];
    }
    Ok(x)
}

/// A linear map `A → A` stored by sparse columns (column `j` is the image of `e_j`).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap<C> {
    columns: Vec<Vec<(usize, C)>>,
}

impl<C: Coeff> AlgebraMap<C> {
    pub fn identity(dim: usize) -> Self {
        AlgebraMap { columns: (0..dim).map(|j| vec![(j, C::one())]).collect() }
    }

    pub fn diagonal(entries: Vec<C>) -> Self {
        AlgebraMap {
            columns: entries
                .into_iter()
                .enumerate()
                .map(|(j, c)| if c.is_zero() { vec![] } else { vec![(j, c)] })
                .collect(),
        }
    }

    pub fn from_columns(columns: Vec<Vec<(usize, C)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc = BTreeMap::new();
                for (k, c) in col {
                    accumulate(&mut acc, k, c);
                }
                acc.into_iter().collect()
            })
            .collect();
        AlgebraMap { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, C)] {
        &self.columns[j]
    }

    pub fn is_diagonal(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|(k, _)| *k == j))
    }

    pub fn apply(&self, x: &Element<C>) -> Element<C> {
        let mut out = vec![C::zero(); self.dim()];
        for (j, xj) in x.coeffs().iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, c) in &self.columns[j] {
                out[*k] = out[*k].add(&xj.mul(c));
            }
        }
        Element::from_coeffs(out)
    }

    pub fn apply_sparse(&self, x: &[(usize, C)]) -> Vec<(usize, C)> {
        let mut acc = BTreeMap::new();
        for (j, xj) in x {
            for (k, c) in &self.columns[*j] {
                accumulate(&mut acc, *k, xj.mul(c));
            }
        }
        acc.into_iter().collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AlgebraMap {
            columns: other.columns.iter().map(|col| self.apply_sparse(col)).collect(),
        }
    }

    /// Whether the map is multiplicative on basis pairs and fixes the unit.
    pub fn is_algebra_map(&self, alg: &AlgebraSpec) -> bool {
        self.algebra_map_failure(alg).is_none()
    }

    /// First basis pair `(i, j)` with `f(e_i e_j) ≠ f(e_i) f(e_j)`, or `None`; unit failure reported as `(dim, dim)`.
    pub fn algebra_map_failure(&self, alg: &AlgebraSpec) -> Option<(usize, usize)> {
        let dim = alg.dim();
        for i in 0..dim {
            for j in 0..dim {
                let lhs = self.apply_sparse(&alg
                    .basis_product(i, j)
                    .iter()
                    .map(|(k, c)| (*k, C::from_scalar(c.clone())))
                    .collect::<Vec<_>>());
                let rhs = alg.mul_sparse(&self.columns[i], &self.columns[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        let unit: Vec<(usize, C)> = alg.unit_terms().into_iter().map(|(k, c)| (k, C::from_scalar(c))).collect();
        if self.apply_sparse(&unit) != unit {
            return Some((dim, dim));
        }
        None
    }

    /// `(self ⊗ other)(u)`.
    pub fn apply_tensor(&self, other: &Self, u: &TensorSquare<C>) -> TensorSquare<C> {
        apply_map_tensor(self, other, u)
    }
}

impl AlgebraMap<Scalar> {
    pub fn lift<D: Coeff>(&self) -> AlgebraMap<D> {
        AlgebraMap {
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(k, c)| (*k, D::from_scalar(c.clone()))).collect())
                .collect(),
        }
    }

    /// Dense matrix inverse by elimination.
    pub fn inverse(&self) -> Result<Self> {
        let dim = self.dim();
        if self.is_diagonal() {
            let mut cols = Vec::with_capacity(dim);
            for (j, col) in self.columns.iter().enumerate() {
                let c = col.first().ok_or(OqaError::Singular)?;
                cols.push(vec![(j, c.1.inv()?)]);
            }
            return Ok(AlgebraMap { columns: cols });
        }
        let mut columns = Vec::with_capacity(dim);
        for target in 0..dim {
            let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim];
            for (j, col) in self.columns.iter().enumerate() {
                for (k, c) in col {
                    rows[*k].insert(j, c.clone());
                }
            }
            let mut rhs = vec![Scalar::zero(); dim];
            rhs[target] = Scalar::one();
            let x = solve_sparse(rows, rhs, dim)?;
            columns.push(x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(AlgebraMap { columns })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = AlgebraMap::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        Ok(acc)
    }

    pub fn substitute(&self, bindings: &std::collections::HashMap<usize, Scalar>) -> Result<Self> {
        let mut columns = Vec::with_capacity(self.dim());
        for col in &self.columns {
            let mut out = Vec::with_capacity(col.len());
            for (k, c) in col {
                let v = c.substitute(bindings)?;
                if !v.is_zero() {
                    out.push((*k, v));
                }
            }
            columns.push(out);
        }
        Ok(AlgebraMap { columns })
    }
}

/// `(f ⊗ g)(u)`.
pub fn apply_map_tensor<C: Coeff>(f: &AlgebraMap<C>, g: &AlgebraMap<C>, u: &TensorSquare<C>) -> TensorSquare<C> {
    let mut out = TensorSquare::zero(u.dim());
    for ((i, j), c) in &u.entries {
        for (p, x) in f.column(*i) {
            for (q, y) in g.column(*j) {
                out.add_term(*p, *q, c.mul(&x.mul(y)));
            }
        }
    }
    out
}

/// Sparse element of `A⊗A⊗A`.
type Triple<C> = BTreeMap<(usize, usize, usize), C>;

fn embed<C: Coeff>(alg: &AlgebraSpec, rho: &TensorSquare<C>, slots: (usize, usize)) -> Triple<C> {
    let mut out = Triple::new();
    for ((i, j), c) in rho.entries() {
        for (k, u) in alg.unit_terms() {
            let mut idx = [k; 3];
            idx[slots.0] = *i;
            idx[slots.1] = *j;
            accumulate(&mut out, (idx[0], idx[1], idx[2]), c.scale(&u));
        }
    }
    out
}

fn triple_mul<C: Coeff>(alg: &AlgebraSpec, x: &Triple<C>, y: &Triple<C>) -> Triple<C> {
    let mut out = Triple::new();
    for ((a, b, c), cx) in x {
        for ((d, e, f), cy) in y {
            let p1 = alg.basis_product(*a, *d);
            if p1.is_empty() {
                continue;
            }
            let p2 = alg.basis_product(*b, *e);
            if p2.is_empty() {
                continue;
            }
            let p3 = alg.basis_product(*c, *f);
            if p3.is_empty() {
                continue;
            }
            let coef = cx.mul(cy);
            for (i, s) in p1 {
                for (j, t) in p2 {
                    for (k, u) in p3 {
                        accumulate(&mut out, (*i, *j, *k), coef.scale(&(s * &(t * u))));
                    }
                }
            }
        }
    }
    out
}

/// Outcome of the quantum Yang–Baxter check; `witness` is the first basis triple where the sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QybeReport {
    pub holds: bool,
    pub witness: Option<(usize, usize, usize)>,
}

/// Compares `ρ₁₂ρ₁₃ρ₂₃` with `ρ₂₃ρ₁₃ρ₁₂` in `A⊗A⊗A`.
pub fn qybe_report<C: Coeff>(alg: &AlgebraSpec, rho: &TensorSquare<C>) -> QybeReport {
    let r12 = embed(alg, rho, (0, 1));
    let r13 = embed(alg, rho, (0, 2));
    let r23 = embed(alg, rho, (1, 2));
    let left = triple_mul(alg, &triple_mul(alg, &r12, &r13), &r23);
    let right = triple_mul(alg, &triple_mul(alg, &r23, &r13), &r12);
    if left == right {
        return QybeReport { holds: true, witness: None };
    }
    let witness = left
        .keys()
        .chain(right.keys())
        .filter(|k| left.get(k) != right.get(k))
        .min()
        .copied();
    QybeReport { holds: false, witness }
}

pub fn qybe_check<C: Coeff>(alg: &AlgebraSpec, rho: &TensorSquare<C>) -> bool {
    qybe_report(alg, rho).holds
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_multiply() {
        let m = AlgebraSpec::matrix(2);
        let e12 = m.matrix_unit(0, 1);
        let e21 = m.matrix_unit(1, 0);
        assert_eq!(m.basis_product(e12, e21), &[(m.matrix_unit(0, 0), Scalar::one())]);
        assert!(m.basis_product(e12, e12).is_empty());
        assert!(m.associativity_failure().is_none());
        assert!(m.unit_is_identity());
    }

    #[test]
    fn sweedler_relations() {
        let h = AlgebraSpec::sweedler();
        assert!(h.associativity_failure().is_none());
        assert!(h.unit_is_identity());
        assert_eq!(h.basis_product(1, 1), &[(0, Scalar::one())]);
        assert_eq!(h.basis_product(2, 1), &[(3, -Scalar::one())]);
        assert!(h.basis_product(3, 3).is_empty());
    }

    #[test]
    fn opposite_reverses_products() {
        let m = AlgebraSpec::matrix(2);
        let op = m.opposite();
        assert_eq!(op.basis_product(1, 2), m.basis_product(2, 1));
        assert_eq!(op.opposite(), m);
    }

    #[test]
    fn invert_identity_tensor() {
        let m = AlgebraSpec::matrix(2);
        let one = TensorSquare::<Scalar>::one(&m);
        assert_eq!(tensor_invert(&m, &one).unwrap(), one);
    }

    #[test]
    fn singular_tensor_is_rejected() {
        let m = AlgebraSpec::matrix(2);
        let u = TensorSquare::from_entries(4, [((0, 0), Scalar::one())]);
        assert_eq!(tensor_invert(&m, &u), Err(OqaError::Singular));
    }

    #[test]
    fn map_inverse_and_power() {
        let f = AlgebraMap::from_columns(vec![
            vec![(0, Scalar::one())],
            vec![(0, Scalar::from_int(2)), (1, Scalar::one())],
        ]);
        let inv = f.inverse().unwrap();
        assert_eq!(f.compose(&inv), AlgebraMap::identity(2));
        assert_eq!(f.pow(-2).unwrap().compose(&f.pow(2).unwrap()), AlgebraMap::identity(2));
    }
}
