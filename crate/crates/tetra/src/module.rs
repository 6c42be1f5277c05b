//! The generic container for a concrete finite-dimensional module of the
//! tetrahedron algebra: one exact matrix per generator, plus everything that
//! can be computed from that data alone — relation verification, eigenspace
//! decompositions and flags, S₄ twisting, dualization, commutant dimension,
//! and the shape polynomial.

use crate::matrix::ExactMatrix;
use crate::par;
use crate::poly::UniPoly;
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::symmetry::{GenPair, Perm4, VertexIndex};
use num_traits::Zero;
use serde_json::{json, Map, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("matrix for {pair} must be {dim}x{dim}, got {rows}x{cols}")]
    ShapeMismatch {
        pair: String,
        dim: usize,
        rows: usize,
        cols: usize,
    },
    #[error("generator {pair} is not well graded: {detail}")]
    NotWellGraded { pair: String, detail: String },
    #[error("flag [{i}] depends on the choice of second index (not a module?)")]
    FlagInconsistent { i: usize },
    #[error("module is not irreducible: lowest weight space has dimension {0}")]
    NotIrreducible(usize),
    #[error("malformed module JSON: {0}")]
    BadJson(String),
}

/// A concrete module: `dim` and one `dim`×`dim` matrix per ordered pair of
/// distinct vertices. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct TetModule {
    dim: usize,
    label: String,
    action: Vec<ExactMatrix>, // indexed by GenPair::storage_index
}

impl TetModule {
    /// Wraps twelve generator matrices, checking only the shape invariant;
    /// use [`TetModule::verify_relations`] for the defining relations.
    pub fn new(
        dim: usize,
        label: impl Into<String>,
        action: Vec<ExactMatrix>,
    ) -> Result<Self, ModuleError> {
        assert!(dim >= 1, "modules have positive dimension");
        assert_eq!(action.len(), 12, "one matrix per ordered pair");
        for (m, pair) in action.iter().zip(GenPair::all()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModuleError::ShapeMismatch {
                    pair: pair.to_string(),
                    dim,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(TetModule {
            dim,
            label: label.into(),
            action,
        })
    }

    /// Builds from the six matrices with i < j, filling in the reversed
    /// pairs by antisymmetry.
    pub fn from_upper_pairs(
        dim: usize,
        label: impl Into<String>,
        mut upper: impl FnMut(GenPair) -> ExactMatrix,
    ) -> Result<Self, ModuleError> {
        let mut action = vec![ExactMatrix::zeros(dim, dim); 12];
        for pair in GenPair::all() {
            if pair.i() < pair.j() {
                let m = upper(pair);
                action[pair.reversed().storage_index()] = -&m;
                action[pair.storage_index()] = m;
            }
        }
        TetModule::new(dim, label, action)
    }

    /// The one-dimensional module on which every generator acts as zero.
    pub fn trivial() -> Self {
        TetModule::new(1, "trivial", vec![ExactMatrix::zeros(1, 1); 12]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn action(&self, pair: GenPair) -> &ExactMatrix {
        &self.action[pair.storage_index()]
    }

    pub fn action_ij(&self, i: usize, j: usize) -> &ExactMatrix {
        self.action(GenPair::from_indices(i, j).expect("distinct indices"))
    }

    /// Checks one relation; `None` means it holds exactly.
    pub fn check_relation(&self, relation: Relation) -> Option<RelationViolation> {
        let residual = match relation {
            Relation::Antisymmetry(i, j) => {
                let a = self.action_ij(i.index(), j.index());
                let b = self.action_ij(j.index(), i.index());
                a + b
            }
            Relation::Bracket(i, j, k) => {
                let a = self.action_ij(i.index(), j.index());
                let b = self.action_ij(j.index(), k.index());
                let two = rat(2);
                &a.commutator(b) - &(&a.scale(&two) + &b.scale(&two))
            }
            Relation::DolanGrady(i, j) => {
                let (k, l) = complement(i, j);
                let a = self.action_ij(i.index(), j.index());
                let b = self.action_ij(k.index(), l.index());
                let inner = a.commutator(b);
                let triple = a.commutator(&a.commutator(&inner));
                &triple - &inner.scale(&rat(4))
            }
        };
        if residual.is_zero() {
            None
        } else {
            Some(RelationViolation { relation })
        }
    }

    /// Checks every defining relation: 6 antisymmetry pairs, 24 two-index
    /// bracket relations, 12 Dolan-Grady relations. Independent checks run
    /// in parallel under the `parallel` feature. Empty report = valid module.
    pub fn verify_relations(&self) -> Vec<RelationViolation> {
        par::map_collect(Relation::all(), |r| self.check_relation(r))
            .into_iter()
            .flatten()
            .collect()
    }

    /// Largest eigenvalue of `action(i,j)`, located by scanning integer
    /// candidates downward from `dim - 1`. For a well-graded module this is
    /// the diameter.
    fn top_eigenvalue(&self, pair: GenPair) -> Result<i64, ModuleError> {
        let m = self.action(pair);
        let n = self.dim as i64;
        for t in (-(n - 1)..=(n - 1)).rev() {
            let shifted = m - &ExactMatrix::identity(self.dim).scale(&rat(t));
            if !shifted.kernel_basis().is_empty() {
                return Ok(t);
            }
        }
        Err(ModuleError::NotWellGraded {
            pair: pair.to_string(),
            detail: "no integer eigenvalue".into(),
        })
    }

    /// The eigenspace decomposition `[i,j]`: component n is the eigenspace of
    /// `action(i,j)` for the eigenvalue 2n - d, with d inferred from the
    /// spectrum. Errors unless the spectrum is exactly {d-2n : 0 ≤ n ≤ d}
    /// with eigenspace dimensions summing to `dim`.
    pub fn decomposition(
        &self,
        i: VertexIndex,
        j: VertexIndex,
    ) -> Result<Decomposition, ModuleError> {
        let pair = GenPair::new(i, j).expect("distinct indices");
        let top = self.top_eigenvalue(pair)?;
        if top < 0 {
            return Err(ModuleError::NotWellGraded {
                pair: pair.to_string(),
                detail: format!("largest eigenvalue {top} is negative"),
            });
        }
        let d = top as usize;
        let m = self.action(pair);
        let mut components = Vec::with_capacity(d + 1);
        let mut total = 0usize;
        for n in 0..=d {
            let eigenvalue = rat(2 * n as i64 - d as i64);
            let shifted = m - &ExactMatrix::identity(self.dim).scale(&eigenvalue);
            let basis = shifted.kernel_basis();
            if basis.is_empty() {
                return Err(ModuleError::NotWellGraded {
                    pair: pair.to_string(),
                    detail: format!(
                        "eigenvalue {} missing from the spectrum",
                        format_rational(&eigenvalue)
                    ),
                });
            }
            total += basis.len();
            components.push(ExactMatrix::from_columns(&basis).column_echelon());
        }
        if total != self.dim {
            return Err(ModuleError::NotWellGraded {
                pair: pair.to_string(),
                detail: format!(
                    "eigenspace dimensions sum to {total}, expected {}",
                    self.dim
                ),
            });
        }
        Ok(Decomposition {
            components,
            diameter: d,
        })
    }

    /// The flag `[i]`: nested partial sums of any decomposition `[i,j]`, j ≠ i,
    /// verified independent of the choice of j.
    pub fn flag(&self, i: VertexIndex) -> Result<Flag, ModuleError> {
        let mut result: Option<Flag> = None;
        for j in VertexIndex::ALL {
            if j == i {
                continue;
            }
            let dec = self.decomposition(i, j)?;
            let flag = Flag::induced_by(&dec);
            match &result {
                None => result = Some(flag),
                Some(first) if *first == flag => {}
                Some(_) => return Err(ModuleError::FlagInconsistent { i: i.index() }),
            }
        }
        Ok(result.expect("three choices of j"))
    }

    /// The module twisted via `sigma`: the new action of x_ij is the old
    /// action of x_{σ⁻¹(i),σ⁻¹(j)}.
    pub fn twist(&self, sigma: Perm4) -> TetModule {
        let inv = sigma.inverse();
        let action = GenPair::all()
            .map(|pair| self.action(inv.apply_pair(pair)).clone())
            .to_vec();
        TetModule::new(
            self.dim,
            format!("twist({}, {})", self.label, sigma),
            action,
        )
        .expect("twisting preserves shape")
    }

    /// The dual module: each generator acts as minus the transpose.
    pub fn dualize(&self) -> TetModule {
        let action = self.action.iter().map(|m| -&m.transpose()).collect();
        TetModule::new(self.dim, format!("dual({})", self.label), action)
            .expect("dualizing preserves shape")
    }

    /// Dimension of {X : X·action(i,j) = action(i,j)·X for all pairs}, the
    /// kernel of the stacked Sylvester system. X commuting with the
    /// semisimple action(0,1) forces X block-diagonal in the `[0,1]` eigenbasis,
    /// so when that decomposition exists the system is solved on the reduced
    /// block unknowns; otherwise the full dim² system is used.
    pub fn commutant_dimension(&self) -> usize {
        let v0 = VertexIndex::new(0).unwrap();
        let v1 = VertexIndex::new(1).unwrap();
        if let Ok(dec) = self.decomposition(v0, v1) {
            let basis = dec.basis_matrix();
            let inv = basis.inverse().expect("decomposition basis is invertible");
            let gens: Vec<ExactMatrix> = GenPair::all()
                .into_iter()
                .filter(|p| p.i() < p.j() && !(p.i() == v0 && p.j() == v1))
                .map(|p| &(&inv * self.action(p)) * &basis)
                .collect();
            commutant_kernel_dim(&dec.shape(), &gens)
        } else {
            let gens: Vec<ExactMatrix> = GenPair::all()
                .into_iter()
                .filter(|p| p.i() < p.j())
                .map(|p| self.action(p).clone())
                .collect();
            commutant_kernel_dim(&[self.dim], &gens)
        }
    }

    /// S_V = Σ ρ_n λⁿ with ρ_n the eigenspace dimensions of the `[0,1]`
    /// decomposition, verified identical for all 12 ordered pairs.
    pub fn shape_polynomial(&self) -> Result<UniPoly, ModuleError> {
        let mut shape: Option<Vec<usize>> = None;
        for pair in GenPair::all() {
            let dec = self.decomposition(pair.i(), pair.j())?;
            match &shape {
                None => shape = Some(dec.shape()),
                Some(s) if *s == dec.shape() => {}
                Some(s) => {
                    return Err(ModuleError::NotWellGraded {
                        pair: pair.to_string(),
                        detail: format!("shape {:?} differs from {:?}", dec.shape(), s),
                    })
                }
            }
        }
        let shape = shape.expect("twelve pairs checked");
        Ok(UniPoly::new(
            shape.into_iter().map(|r| rat(r as i64)).collect(),
        ))
    }

    /// JSON form: `{"schema", "dim", "label", "action": {"x01": [[..]], ..}}`
    /// with rationals as `"p/q"` strings and all 12 generator keys present.
    pub fn to_json_value(&self) -> Value {
        let mut action = Map::new();
        for pair in GenPair::all() {
            let rows: Vec<Value> = self
                .action(pair)
                .to_string_rows()
                .into_iter()
                .map(|row| Value::Array(row.into_iter().map(Value::String).collect()))
                .collect();
            action.insert(pair.json_key(), Value::Array(rows));
        }
        json!({
            "schema": "tetbox/1",
            "dim": self.dim,
            "label": self.label,
            "action": Value::Object(action),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(value: &Value) -> Result<Self, ModuleError> {
        let bad = |msg: &str| ModuleError::BadJson(msg.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(schema) = obj.get("schema") {
            if schema.as_str() != Some("tetbox/1") {
                return Err(bad("unsupported schema (expected \"tetbox/1\")"));
            }
        }
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"dim\""))? as usize;
        let label = obj
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing string field \"label\""))?;
        let action_obj = obj
            .get("action")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object field \"action\""))?;
        let mut action = Vec::with_capacity(12);
        for pair in GenPair::all() {
            let key = pair.json_key();
            let rows = action_obj
                .get(&key)
                .and_then(Value::as_array)
                .ok_or_else(|| ModuleError::BadJson(format!("missing generator {key:?}")))?;
            let mut matrix_rows = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| ModuleError::BadJson(format!("{key}: row is not an array")))?;
                let mut entries = Vec::with_capacity(row.len());
                for cell in row {
                    let s = cell.as_str().ok_or_else(|| {
                        ModuleError::BadJson(format!("{key}: entry not a string"))
                    })?;
                    entries.push(
                        parse_rational(s)
                            .map_err(|e| ModuleError::BadJson(format!("{key}: {e}")))?,
                    );
                }
                matrix_rows.push(entries);
            }
            if matrix_rows.len() != dim || matrix_rows.iter().any(|r| r.len() != dim) {
                return Err(ModuleError::ShapeMismatch {
                    pair: pair.to_string(),
                    dim,
                    rows: matrix_rows.len(),
                    cols: matrix_rows.first().map_or(0, Vec::len),
                });
            }
            action.push(ExactMatrix::from_rows(matrix_rows));
        }
        TetModule::new(dim, label, action)
    }

    pub fn from_json(s: &str) -> Result<Self, ModuleError> {
        let value: Value =
            serde_json::from_str(s).map_err(|e| ModuleError::BadJson(e.to_string()))?;
        TetModule::from_json_value(&value)
    }
}

impl fmt::Debug for TetModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TetModule({}, dim {})", self.label, self.dim)
    }
}

/// Kernel dimension of the block-restricted commutation system: the unknown
/// is block-diagonal with square blocks of the given sizes, and must commute
/// with each of `gens` (expressed in the same basis).
fn commutant_kernel_dim(block_sizes: &[usize], gens: &[ExactMatrix]) -> usize {
    let starts: Vec<usize> = block_sizes
        .iter()
        .scan(0, |acc, &s| {
            let v = *acc;
            *acc += s;
            Some(v)
        })
        .collect();
    let offsets: Vec<usize> = block_sizes
        .iter()
        .scan(0, |acc, &s| {
            let v = *acc;
            *acc += s * s;
            Some(v)
        })
        .collect();
    let unknowns: usize = block_sizes.iter().map(|s| s * s).sum();

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for m in gens {
        for (p, (&rho_p, &row0)) in block_sizes.iter().zip(&starts).enumerate() {
            for (q, (&rho_q, &col0)) in block_sizes.iter().zip(&starts).enumerate() {
                let block_zero =
                    (0..rho_p).all(|r| (0..rho_q).all(|c| m[(row0 + r, col0 + c)].is_zero()));
                if block_zero {
                    continue;
                }
                // X_p·A - A·X_q = 0 entrywise, A the (p,q) block of m
                for r in 0..rho_p {
                    for c in 0..rho_q {
                        let mut row = vec![Rational::zero(); unknowns];
                        for mm in 0..rho_q {
                            let a = &m[(row0 + r, col0 + mm)];
                            if !a.is_zero() {
                                row[offsets[q] + mm * rho_q + c] -= a;
                            }
                        }
                        for mm in 0..rho_p {
                            let a = &m[(row0 + mm, col0 + c)];
                            if !a.is_zero() {
                                row[offsets[p] + r * rho_p + mm] += a;
                            }
                        }
                        if row.iter().any(|v| !v.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - ExactMatrix::from_rows(rows).rank()
}

fn complement(i: VertexIndex, j: VertexIndex) -> (VertexIndex, VertexIndex) {
    let mut rest = VertexIndex::ALL.into_iter().filter(|&v| v != i && v != j);
    (
        rest.next().expect("two remaining"),
        rest.next().expect("two remaining"),
    )
}

/// One defining relation of the algebra, as data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// x_ij + x_ji = 0, for i < j.
    Antisymmetry(VertexIndex, VertexIndex),
    /// `[x_ij, x_jk] = 2x_ij + 2x_jk`, mutually distinct i,j,k.
    Bracket(VertexIndex, VertexIndex, VertexIndex),
    /// `[x_ij,[x_ij,[x_ij,x_kl]]] = 4[x_ij,x_kl]`, {k,l} complementary to {i,j}.
    DolanGrady(VertexIndex, VertexIndex),
}

impl Relation {
    /// The full list: 6 antisymmetry, 24 bracket, 12 Dolan-Grady.
    pub fn all() -> Vec<Relation> {
        let mut out = Vec::with_capacity(42);
        for i in VertexIndex::ALL {
            for j in VertexIndex::ALL {
                if i < j {
                    out.push(Relation::Antisymmetry(i, j));
                }
            }
        }
        for i in VertexIndex::ALL {
            for j in VertexIndex::ALL {
                for k in VertexIndex::ALL {
                    if i != j && j != k && i != k {
                        out.push(Relation::Bracket(i, j, k));
                    }
                }
            }
        }
        for i in VertexIndex::ALL {
            for j in VertexIndex::ALL {
                if i != j {
                    out.push(Relation::DolanGrady(i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Antisymmetry(i, j) => write!(f, "antisymmetry x{i}{j} + x{j}{i} = 0"),
            Relation::Bracket(i, j, k) => {
                write!(f, "bracket [x{i}{j}, x{j}{k}] = 2x{i}{j} + 2x{j}{k}")
            }
            Relation::DolanGrady(i, j) => {
                let (k, l) = complement(*i, *j);
                write!(
                    f,
                    "Dolan-Grady [x{i}{j},[x{i}{j},[x{i}{j},x{k}{l}]]] = 4[x{i}{j},x{k}{l}]"
                )
            }
        }
    }
}

/// A relation that failed to hold exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: Relation,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violated: {}", self.relation)
    }
}

/// A direct-sum decomposition into eigenspace components, each stored as a
/// column-echelon basis matrix (canonical, so components compare by equality).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    components: Vec<ExactMatrix>,
    diameter: usize,
}

impl Decomposition {
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn component(&self, n: usize) -> &ExactMatrix {
        &self.components[n]
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    /// Eigenspace dimensions ρ_0..ρ_d.
    pub fn shape(&self) -> Vec<usize> {
        self.components.iter().map(ExactMatrix::cols).collect()
    }

    pub fn is_palindromic(&self) -> bool {
        let s = self.shape();
        s.iter().eq(s.iter().rev())
    }

    /// All component bases side by side: a basis of the whole space.
    pub fn basis_matrix(&self) -> ExactMatrix {
        let mut it = self.components.iter();
        let first = it.next().expect("at least one component").clone();
        it.fold(first, |acc, c| acc.hstack(c))
    }

    /// The reversed decomposition (component n ↦ component d-n).
    pub fn inversion(&self) -> Decomposition {
        Decomposition {
            components: self.components.iter().rev().cloned().collect(),
            diameter: self.diameter,
        }
    }
}

/// A nested chain of subspaces U_0 ⊆ … ⊆ U_d with U_d the whole space,
/// stored as canonical column-echelon bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    components: Vec<ExactMatrix>,
}

impl Flag {
    pub fn induced_by(dec: &Decomposition) -> Flag {
        let mut components = Vec::with_capacity(dec.diameter() + 1);
        let mut acc: Option<ExactMatrix> = None;
        for c in dec.components() {
            let next = match &acc {
                None => c.clone(),
                Some(prev) => prev.hstack(c),
            };
            components.push(next.column_echelon());
            acc = Some(next);
        }
        Flag { components }
    }

    pub fn diameter(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, n: usize) -> &ExactMatrix {
        &self.components[n]
    }

    pub fn shape(&self) -> Vec<usize> {
        let mut prev = 0;
        self.components
            .iter()
            .map(|c| {
                let s = c.cols() - prev;
                prev = c.cols();
                s
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{build_eval_module, EvalModuleSpec};
    use crate::rational::{rat, ratio};
    use crate::symmetry::EvalParam;

    fn v(i: usize) -> VertexIndex {
        VertexIndex::new(i).unwrap()
    }

    fn eval_module(d: usize, num: i64, den: i64) -> TetModule {
        build_eval_module(&EvalModuleSpec::new(
            d,
            EvalParam::new(ratio(num, den)).unwrap(),
        ))
    }

    #[test]
    fn trivial_module_satisfies_all_relations() {
        assert!(TetModule::trivial().verify_relations().is_empty());
    }

    #[test]
    fn evaluation_module_satisfies_all_relations() {
        assert!(eval_module(1, 2, 1).verify_relations().is_empty());
        assert!(eval_module(3, 7, 3).verify_relations().is_empty());
    }

    #[test]
    fn zeroing_a_generator_breaks_antisymmetry_for_that_pair() {
        let m = eval_module(1, 2, 1);
        let mut action: Vec<ExactMatrix> = GenPair::all().map(|p| m.action(p).clone()).to_vec();
        let x01 = GenPair::from_indices(0, 1).unwrap();
        action[x01.storage_index()] = ExactMatrix::zeros(2, 2);
        let broken = TetModule::new(2, "broken", action).unwrap();
        let report = broken.verify_relations();
        assert!(!report.is_empty());
        assert!(report
            .iter()
            .any(|viol| viol.relation == Relation::Antisymmetry(v(0), v(1))));
    }

    #[test]
    fn shape_mismatch_rejected_at_construction() {
        let mut action = vec![ExactMatrix::zeros(2, 2); 12];
        action[3] = ExactMatrix::zeros(1, 2);
        assert!(matches!(
            TetModule::new(2, "bad", action),
            Err(ModuleError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn decomposition_of_standard_basis_pair() {
        // on V_d(a) the [1,3] component n is spanned by the n-th basis vector
        let m = eval_module(3, 2, 1);
        let dec = m.decomposition(v(1), v(3)).unwrap();
        assert_eq!(dec.diameter(), 3);
        assert_eq!(dec.shape(), vec![1, 1, 1, 1]);
        for n in 0..=3 {
            let col = dec.component(n).column(0);
            for (r, entry) in col.iter().enumerate() {
                assert_eq!(entry.is_zero(), r != n, "component {n}");
            }
        }
    }

    #[test]
    fn trivial_module_has_single_component_decomposition() {
        let dec = TetModule::trivial().decomposition(v(0), v(1)).unwrap();
        assert_eq!(dec.diameter(), 0);
        assert_eq!(dec.shape(), vec![1]);
        let flag = TetModule::trivial().flag(v(0)).unwrap();
        assert_eq!(flag.diameter(), 0);
    }

    #[test]
    fn opposite_pair_decompositions_are_inversions() {
        let m = eval_module(2, 3, 1);
        for i in VertexIndex::ALL {
            for j in VertexIndex::ALL {
                if i == j {
                    continue;
                }
                let ij = m.decomposition(i, j).unwrap();
                let ji = m.decomposition(j, i).unwrap();
                assert_eq!(ij.inversion(), ji);
            }
        }
    }

    #[test]
    fn flag_of_standard_module_is_initial_segments() {
        let m = eval_module(2, 2, 1);
        let flag = m.flag(v(1)).unwrap();
        assert_eq!(flag.shape(), vec![1, 1, 1]);
        for n in 0..=2 {
            let u = flag.component(n);
            assert_eq!(u.cols(), n + 1);
            // spanned by the first n+1 standard basis vectors
            for c in 0..u.cols() {
                for r in 0..u.rows() {
                    if r > n {
                        assert!(u[(r, c)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn twist_by_identity_is_identity() {
        let m = eval_module(2, 3, 1);
        let t = m.twist(Perm4::IDENTITY);
        for p in GenPair::all() {
            assert_eq!(t.action(p), m.action(p));
        }
    }

    #[test]
    fn twist_is_a_group_action() {
        let m = eval_module(2, 3, 1);
        let sigma = Perm4::parse_cycles("(0 1 2)").unwrap();
        let back = m.twist(sigma).twist(sigma.inverse());
        for p in GenPair::all() {
            assert_eq!(back.action(p), m.action(p));
        }
        let tau = Perm4::parse_cycles("(1 3)").unwrap();
        let lhs = m.twist(sigma.compose(tau));
        let rhs = m.twist(tau).twist(sigma);
        for p in GenPair::all() {
            assert_eq!(lhs.action(p), rhs.action(p), "at {p}");
        }
        assert!(m.twist(sigma).verify_relations().is_empty());
    }

    #[test]
    fn dualize_is_an_involution_and_preserves_relations() {
        let m = eval_module(2, 3, 1);
        let dd = m.dualize().dualize();
        for p in GenPair::all() {
            assert_eq!(dd.action(p), m.action(p));
        }
        assert!(m.dualize().verify_relations().is_empty());
        let t = TetModule::trivial();
        assert_eq!(t.dualize().action_ij(0, 1), t.action_ij(0, 1));
    }

    #[test]
    fn commutant_of_irreducibles_is_one_dimensional() {
        assert_eq!(TetModule::trivial().commutant_dimension(), 1);
        assert_eq!(eval_module(3, 2, 1).commutant_dimension(), 1);
    }

    #[test]
    fn shape_polynomial_of_evaluation_module() {
        let m = eval_module(3, 2, 1);
        let s = m.shape_polynomial().unwrap();
        assert_eq!(s, UniPoly::new(vec![rat(1); 4]));
        assert_eq!(
            TetModule::trivial().shape_polynomial().unwrap(),
            UniPoly::one()
        );
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = eval_module(2, 7, 3);
        let back = TetModule::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(back.verify_relations().is_empty());
    }

    #[test]
    fn json_requires_all_twelve_generators() {
        let m = eval_module(1, 2, 1);
        let mut value = m.to_json_value();
        value
            .as_object_mut()
            .unwrap()
            .get_mut("action")
            .unwrap()
            .as_object_mut()
            .unwrap()
            .remove("x23");
        assert!(matches!(
            TetModule::from_json_value(&value),
            Err(ModuleError::BadJson(_))
        ));
    }
}
