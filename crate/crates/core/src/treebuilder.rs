//! Symbolic resolution engine.
//!
//! Works entirely with leading-term data over the presented algebra: every
//! differential entry is a signed monomial drawn from the seven edge labels
//! `x1, x2, x3, x4, x2*x4^{m-1}, x3*x4^{m-1}, x4^m`. New kernel generators
//! are produced by closed case rules, with no linear algebra, and attached so
//! that each generator covers the target of its leading term. The generator
//! skeleton is therefore a labeled rooted tree ([`WeightedTree`]) whose rank
//! sizes are the Betti numbers.
//!
//! The monomial order on the distinguished basis lives on
//! [`crate::fpa::Monomial`]; module generators are ordered by leading support
//! first and by that order on leading coefficients second, which is exactly
//! the construction order of this builder.
//!
//! `m = 1` collapses the deep labels onto plain variables and degenerates the
//! label automaton; the symbolic builder proper requires `m >= 2`, while
//! [`base_complex`] (up to homological degree two) works for any `m`.

use std::collections::{BTreeMap, HashMap};


use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::fpa::{
    build_presented, exponent_degree, variable_degrees, FpaAlgebra, FpaElement, Monomial,
};
use crate::lattice::LatticePoint;
use crate::poly::MultiPoly;
use crate::resolution::{Differential, GeneratorRecord, Resolution};
use crate::{Error, Result};

/// Label indices into the seven edge labels.
pub const L_X1: usize = 0;
pub const L_X2: usize = 1;
pub const L_X3: usize = 2;
pub const L_X4: usize = 3;
/// `x2 * x4^{m-1}`
pub const L_X2_DEEP: usize = 4;
/// `x3 * x4^{m-1}`
pub const L_X3_DEEP: usize = 5;
/// `x4^m`
pub const L_X4_DEEP: usize = 6;

/// The seven label monomials for parameter `m`, in label-index order.
pub fn label_monomials(m: u32) -> [Monomial; 7] {
    [
        Monomial::var(1),
        Monomial::var(2),
        Monomial::var(3),
        Monomial::var(4),
        Monomial::new(2, m - 1),
        Monomial::new(3, m - 1),
        Monomial::new(4, m - 1),
    ]
}

/// Edge labels together with their basis indices and lattice degrees.
#[derive(Clone, Debug)]
pub struct LabelSet {
    pub m: u32,
    pub monomials: [Monomial; 7],
    pub basis: [usize; 7],
    pub degrees: [LatticePoint; 7],
    /// False exactly when `m = 1`, where the deep labels collapse.
    pub distinct: bool,
}

impl LabelSet {
    pub fn new(m: u32, alg: &FpaAlgebra) -> Result<LabelSet> {
        if m < 1 {
            return Err(Error::InvalidParameter("labels need m >= 1".into()));
        }
        let monomials = label_monomials(m);
        let mut basis = [0usize; 7];
        for (i, mono) in monomials.iter().enumerate() {
            basis[i] = alg
                .index_of_monomial(*mono)
                .ok_or_else(|| Error::Contract(format!("label {mono} missing from basis")))?;
        }
        let var_deg = variable_degrees(m)?;
        let degrees = monomials.map(|mono| exponent_degree(&var_deg, mono.exponents()));
        let mut sorted = basis.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(LabelSet {
            m,
            monomials,
            basis,
            degrees,
            distinct: sorted.len() == 7,
        })
    }

    /// Label index of a basis element, if it is one of the seven labels.
    pub fn classify(&self, basis_index: usize) -> Option<usize> {
        self.basis.iter().position(|&b| b == basis_index)
    }
}

/// Child labels attached under a generator whose own edge label is `label`.
pub fn cover_children(label: usize) -> &'static [usize] {
    match label {
        L_X1 | L_X2 | L_X3 | L_X2_DEEP | L_X3_DEEP => &[L_X1, L_X2, L_X3, L_X4],
        L_X4 => &[L_X2_DEEP, L_X3_DEEP, L_X4_DEEP],
        L_X4_DEEP => &[L_X2, L_X3, L_X4],
        _ => panic!("label index out of range"),
    }
}

/// Whether label `a` lies strictly below label `b` in the coefficient poset:
/// `x1` below everything else, and `x2`, `x3` below `x4`.
pub fn poset_strictly_below(a: usize, b: usize) -> bool {
    (a == L_X1 && b != L_X1) || ((a == L_X2 || a == L_X3) && b == L_X4)
}

/// A node of the label tree.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub id: usize,
    pub rank: usize,
    pub parent: Option<usize>,
    /// Incoming edge label index; `None` only at the root.
    pub label: Option<usize>,
    pub multidegree: LatticePoint,
}

/// The labeled rooted tree generated by the cover rules, with node degrees
/// accumulated along root paths.
#[derive(Clone, Debug)]
pub struct WeightedTree {
    pub m: u32,
    labels: LabelSet,
    nodes: Vec<TreeNode>,
    ranks: Vec<Vec<usize>>,
}

impl WeightedTree {
    /// Root-only tree. Requires distinct labels, hence `m >= 2`.
    pub fn new(m: u32) -> Result<WeightedTree> {
        let alg = build_presented(m)?;
        let labels = LabelSet::new(m, &alg)?;
        if !labels.distinct {
            return Err(Error::InvalidParameter(
                "tree growth needs seven distinct labels (m >= 2)".into(),
            ));
        }
        let ambient = labels.degrees[0].dim();
        Ok(WeightedTree {
            m,
            labels,
            nodes: vec![TreeNode {
                id: 0,
                rank: 0,
                parent: None,
                label: None,
                multidegree: LatticePoint::zero(ambient),
            }],
            ranks: vec![vec![0]],
        })
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn rank_ids(&self, rank: usize) -> &[usize] {
        &self.ranks[rank]
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        self.ranks.iter().map(|r| r.len()).collect()
    }

    pub fn label_set(&self) -> &LabelSet {
        &self.labels
    }

    fn grow_one_rank(&mut self) {
        let top: Vec<usize> = self.ranks.last().cloned().unwrap_or_default();
        let rank = self.ranks.len();
        let mut new_ids = Vec::new();
        for &pid in &top {
            let children: &[usize] = match self.nodes[pid].label {
                None => &[L_X1, L_X2, L_X3, L_X4],
                Some(l) => cover_children(l),
            };
            for &c in children {
                let id = self.nodes.len();
                let multidegree = self.nodes[pid].multidegree.add(&self.labels.degrees[c]);
                self.nodes.push(TreeNode {
                    id,
                    rank,
                    parent: Some(pid),
                    label: Some(c),
                    multidegree,
                });
                new_ids.push(id);
            }
        }
        self.ranks.push(new_ids);
    }

    /// Grows the tree so that all ranks up to `up_to_rank` exist.
    pub fn grow_to(&mut self, up_to_rank: usize) {
        while self.max_rank() < up_to_rank {
            self.grow_one_rank();
        }
    }

    /// Weighted rank generating function, truncated at rank `max_rank`.
    pub fn generating_function(&self, max_rank: usize) -> MultiPoly {
        assert!(max_rank <= self.max_rank(), "tree not grown far enough");
        let num_y = self.nodes[0].multidegree.dim();
        let mut out = MultiPoly::zero(num_y);
        for node in &self.nodes {
            if node.rank > max_rank {
                continue;
            }
            out = out.add(
                &MultiPoly::y_monomial(num_y, &node.multidegree).mul_z_power(node.rank as u32),
            );
        }
        out
    }

    /// Line-based export: one node per line, `id <TAB> parent <TAB> label
    /// <TAB> rank`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            let parent = node
                .parent
                .map(|p| p.to_string())
                .unwrap_or_else(|| "-".into());
            let label = node
                .label
                .map(|l| self.labels.monomials[l].to_string())
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                node.id, parent, label, node.rank
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.nodes
                .iter()
                .map(|n| {
                    serde_json::json!({
                        "id": n.id,
                        "rank": n.rank,
                        "parent": n.parent,
                        "label": n.label.map(|l| self.labels.monomials[l].to_string()),
                        "multidegree": n.multidegree.to_json(),
                    })
                })
                .collect(),
        )
    }
}

/// Functional form of tree growth.
pub fn grow_tree(mut tree: WeightedTree, up_to_rank: usize) -> WeightedTree {
    tree.grow_to(up_to_rank);
    tree
}

/// Per-rank node counts by pure label counting, with no node storage; cheap
/// up to large ranks. Index 0 is the root.
pub fn rank_sizes_by_counting(m: u32, up_to_rank: usize) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidParameter("label counting needs m >= 2".into()));
    }
    let mut out = vec![1u64];
    if up_to_rank == 0 {
        return Ok(out);
    }
    let mut current = [0u64; 7];
    for l in [L_X1, L_X2, L_X3, L_X4] {
        current[l] = 1;
    }
    out.push(current.iter().sum());
    for _ in 2..=up_to_rank {
        let mut next = [0u64; 7];
        for (l, &count) in current.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for &c in cover_children(l) {
                next[c] += count;
            }
        }
        out.push(next.iter().sum());
        current = next;
    }
    Ok(out)
}

/// A resolution produced by the symbolic engine, together with its algebra
/// and label bookkeeping.
pub struct SymbolicResolution {
    pub m: u32,
    alg: FpaAlgebra,
    res: Resolution,
    labels: LabelSet,
    /// Per module: (leading target order index, leading basis index) ->
    /// source order index.
    leading_lookup: Vec<HashMap<(usize, usize), usize>>,
}

impl SymbolicResolution {
    pub fn algebra(&self) -> &FpaAlgebra {
        &self.alg
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    /// Image in `F_{n-1}` of a combination of `F_n` generators.
    pub(crate) fn apply_differential(
        &self,
        n: usize,
        combo: &[(usize, FpaElement)],
    ) -> Result<Vec<(usize, FpaElement)>> {
        let d = self.res.differential(n);
        let mut acc: BTreeMap<usize, FpaElement> = BTreeMap::new();
        for (k, elem) in combo {
            for (j, elem2) in &d.columns[*k] {
                let prod = self.alg.multiply(elem, elem2)?;
                if !prod.is_zero() {
                    acc.entry(*j)
                        .or_insert_with(FpaElement::zero)
                        .add_assign(&prod);
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, e)| !e.is_zero()).collect())
    }

    fn lookup(&self, n: usize, target: usize, lead_basis: usize) -> Result<usize> {
        self.leading_lookup[n]
            .get(&(target, lead_basis))
            .copied()
            .ok_or_else(|| {
                Error::Contract(format!(
                    "no degree-{n} generator with leading term {} over target {target}",
                    self.alg.label(lead_basis)
                ))
            })
    }

    /// The single monomial term of a homogeneous entry.
    fn single_term(elem: &FpaElement) -> Result<(usize, BigRational)> {
        if elem.num_terms() != 1 {
            return Err(Error::Contract(format!(
                "expected a single-monomial entry, found {} terms",
                elem.num_terms()
            )));
        }
        let (basis, c) = elem.support().next().unwrap();
        Ok((basis, c.clone()))
    }

    /// Cancels a single residual term `c * x1 * w` over target `j` against
    /// `x1` times the generator led by `w` over `j`.
    fn push_x1_patch(
        &self,
        n: usize,
        combo: &mut Vec<(usize, FpaElement)>,
        j: usize,
        q: usize,
        c: BigRational,
        w_basis: usize,
    ) -> Result<()> {
        let x1_basis = self.labels.basis[L_X1];
        let partner = self.lookup(n, j, w_basis)?;
        let patch = self.apply_differential(n, &[(partner, FpaElement::basis(x1_basis))])?;
        let (pj, pelem) = match patch.as_slice() {
            [single] => single,
            _ => {
                return Err(Error::Contract(
                    "x1 times the partner column is not a single term".into(),
                ))
            }
        };
        let (pq, pc) = Self::single_term(pelem)?;
        if *pj != j || pq != q {
            return Err(Error::Contract("partner patch does not cancel the residual".into()));
        }
        combo.push((partner, FpaElement::term(x1_basis, -c / pc)));
        Ok(())
    }

    /// Constructs the kernel element with leading term `u * eps`, where `eps`
    /// is generator `e` of `F_n`, following the case rules. Every produced
    /// column is verified to map to zero.
    fn make_kernel_element(
        &self,
        n: usize,
        e: usize,
        u_label: usize,
    ) -> Result<Vec<(usize, FpaElement)>> {
        let u_basis = self.labels.basis[u_label];
        let column = &self.res.differential(n).columns[e];
        let s_basis = self.res.modules[n][e]
            .edge_label
            .expect("non-root generator");
        let s_label = self.labels.classify(s_basis).ok_or_else(|| {
            Error::Contract(format!(
                "leading coefficient {} is not a label",
                self.alg.label(s_basis)
            ))
        })?;

        // d(u * eps) = u * d(eps).
        let mut residual: Vec<(usize, FpaElement)> = Vec::new();
        for (j, elem) in column {
            let prod = self.alg.mul_basis_element(u_basis, elem);
            if !prod.is_zero() {
                residual.push((*j, prod));
            }
        }

        let mut combo = vec![(e, FpaElement::basis(u_basis))];
        if residual.is_empty() {
            return self.finish(n, e, combo);
        }

        let x1x4 = self
            .alg
            .index_of_monomial(Monomial::new(1, 1))
            .expect("x1*x4 is a basis monomial");
        let x1x4m = self
            .alg
            .index_of_monomial(Monomial::new(1, self.m))
            .expect("x1*x4^m is a basis monomial");

        // A single residual term divisible by x1 cancels against x1 times the
        // generator led by the complementary power of x4 over the same target.
        if residual.len() == 1 {
            let (j, elem) = &residual[0];
            let (q, c) = Self::single_term(elem)?;
            let w_basis = if q == x1x4 {
                Some(self.labels.basis[L_X4])
            } else if q == x1x4m {
                Some(self.labels.basis[L_X4_DEEP])
            } else {
                None
            };
            if let Some(w) = w_basis {
                self.push_x1_patch(n, &mut combo, *j, q, c, w)?;
                return self.finish(n, e, combo);
            }
        }

        // Remaining shape: an x4 child of an x2- or x3-led generator. Cancel
        // with s times the x4-led generator over the same target, then patch
        // any leftover x1-divisible term.
        if u_label == L_X4 && (s_label == L_X2 || s_label == L_X3) {
            let target = column[0].0;
            let partner = self.lookup(n, target, self.labels.basis[L_X4])?;
            combo.push((partner, FpaElement::term(s_basis, -BigRational::one())));
            let leftover = self.apply_differential(n, &combo)?;
            match leftover.as_slice() {
                [] => {}
                [(j2, elem)] => {
                    let (q, c) = Self::single_term(elem)?;
                    if q != x1x4 {
                        return Err(Error::Contract(
                            "x4-child leftover is not divisible by x1*x4".into(),
                        ));
                    }
                    self.push_x1_patch(n, &mut combo, *j2, q, c.clone(), self.labels.basis[L_X4])?;
                }
                _ => {
                    return Err(Error::Contract(format!(
                        "x4-child cancellation left {} terms",
                        leftover.len()
                    )))
                }
            }
            return self.finish(n, e, combo);
        }

        Err(Error::Contract(format!(
            "no case rule applies: module {n}, generator {e}, child label {}",
            self.labels.monomials[u_label]
        )))
    }

    /// Sorts, sanity-checks and kernel-verifies a finished column.
    fn finish(
        &self,
        n: usize,
        e: usize,
        mut combo: Vec<(usize, FpaElement)>,
    ) -> Result<Vec<(usize, FpaElement)>> {
        combo.sort_by_key(|&(k, _)| k);
        if combo[0].0 != e {
            return Err(Error::Contract(
                "constructed element is not led by its defining generator".into(),
            ));
        }
        let image = self.apply_differential(n, &combo)?;
        if !image.is_empty() {
            return Err(Error::Contract(format!(
                "constructed column is not a kernel element (module {n}, generator {e})"
            )));
        }
        Ok(combo)
    }

    /// Extends by one homological degree using the cover rules.
    fn extend(&mut self) -> Result<usize> {
        let n = self.res.top_degree();
        let mut gens = Vec::new();
        let mut columns = Vec::new();
        let mut lookup = HashMap::new();
        if n == 0 {
            for (idx, l) in [L_X1, L_X2, L_X3, L_X4].into_iter().enumerate() {
                let basis = self.labels.basis[l];
                gens.push(GeneratorRecord {
                    id: self.res.next_id + idx,
                    homological_degree: 1,
                    multidegree: self.alg.multidegree(basis).clone(),
                    order_index: idx,
                    tree_parent: Some(0),
                    edge_label: Some(basis),
                });
                columns.push(vec![(0usize, FpaElement::basis(basis))]);
                lookup.insert((0usize, basis), idx);
            }
        } else {
            for e in 0..self.res.modules[n].len() {
                let s_basis = self.res.modules[n][e]
                    .edge_label
                    .expect("labeled generator");
                let s_label = self.labels.classify(s_basis).ok_or_else(|| {
                    Error::Contract("generator label outside the label set".into())
                })?;
                for &u_label in cover_children(s_label) {
                    let combo = self.make_kernel_element(n, e, u_label)?;
                    let u_basis = self.labels.basis[u_label];
                    let idx = gens.len();
                    let parent = &self.res.modules[n][e];
                    gens.push(GeneratorRecord {
                        id: self.res.next_id + idx,
                        homological_degree: n + 1,
                        multidegree: parent.multidegree.add(self.alg.multidegree(u_basis)),
                        order_index: idx,
                        tree_parent: Some(parent.id),
                        edge_label: Some(u_basis),
                    });
                    if lookup.insert((e, u_basis), idx).is_some() {
                        return Err(Error::Contract(format!(
                            "duplicate leading data ({e}, {u_basis}) in symbolic module"
                        )));
                    }
                    columns.push(combo);
                }
            }
        }
        let count = gens.len();
        self.res.next_id += count;
        self.res.modules.push(gens);
        self.res.differentials.push(Differential { columns });
        self.leading_lookup.push(lookup);
        Ok(count)
    }
}

/// The explicit complex through homological degree two: the four variables in
/// degree one, and the fifteen relation generators in degree two. Works for
/// every `m >= 1`; at `m = 1` the deep labels collapse onto `x2`, `x3`, `x4`.
pub fn base_complex(m: u32) -> Result<SymbolicResolution> {
    if m < 1 {
        return Err(Error::InvalidParameter("base complex needs m >= 1".into()));
    }
    let alg = build_presented(m)?;
    let labels = LabelSet::new(m, &alg)?;
    let res = Resolution::initial(&alg);
    let mut sym = SymbolicResolution {
        m,
        alg,
        res,
        labels,
        leading_lookup: vec![HashMap::new()],
    };
    sym.extend()?;
    sym.extend()?;
    Ok(sym)
}

/// Builds the symbolic resolution `F_0 <- ... <- F_{up_to}` for `m >= 2`.
pub fn build_symbolic_resolution(m: u32, up_to: usize) -> Result<SymbolicResolution> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "the symbolic engine needs seven distinct labels (m >= 2)".into(),
        ));
    }
    if up_to < 2 {
        return Err(Error::InvalidParameter(
            "build at least the base complex (up_to >= 2)".into(),
        ));
    }
    let mut sym = base_complex(m)?;
    while sym.res.top_degree() < up_to {
        sym.extend()?;
    }
    Ok(sym)
}

/// Weighted rank generating function of the tree, truncated in `z`.
pub fn tree_generating_function(tree: &WeightedTree, max_rank: usize) -> MultiPoly {
    tree.generating_function(max_rank)
}

/// The fifteen rank-two differential columns in closed form, as
/// `(row, sign, label monomial)` triples over the four rank-one generators.
/// This is the explicit presentation of the relations among the variables;
/// [`base_complex`] must reproduce it entrywise.
pub fn reference_rank_two_columns(m: u32) -> Vec<Vec<(usize, i8, Monomial)>> {
    let w2 = Monomial::new(2, m - 1);
    let w3 = Monomial::new(3, m - 1);
    let w4 = Monomial::new(4, m - 1);
    let x = Monomial::var;
    vec![
        vec![(0, 1, x(1))],
        vec![(0, 1, x(2))],
        vec![(0, 1, x(3))],
        vec![(0, 1, x(4)), (3, -1, x(1))],
        vec![(1, 1, x(1))],
        vec![(1, 1, x(2))],
        vec![(1, 1, x(3)), (3, -1, x(1))],
        vec![(1, 1, x(4)), (3, -1, x(2))],
        vec![(2, 1, x(1))],
        vec![(2, 1, x(2)), (3, -1, x(1))],
        vec![(2, 1, x(3))],
        vec![(2, 1, x(4)), (3, -1, x(3))],
        vec![(3, 1, w2)],
        vec![(3, 1, w3)],
        vec![(3, 1, w4)],
    ]
}

/// Extracts a column of a symbolic differential as `(row, sign, monomial)`
/// triples, sorted by row. Errors on non-unit or multi-term entries.
pub fn column_triples(
    sym: &SymbolicResolution,
    n: usize,
    e: usize,
) -> Result<Vec<(usize, i8, Monomial)>> {
    let mut out = Vec::new();
    for (j, elem) in &sym.resolution().differential(n).columns[e] {
        if elem.num_terms() != 1 {
            return Err(Error::Contract("multi-term entry".into()));
        }
        let (basis, c) = elem.support().next().unwrap();
        if !c.abs().is_one() {
            return Err(Error::Contract("non-unit coefficient".into()));
        }
        let sign = if c.is_negative() { -1i8 } else { 1 };
        let mono = sym
            .algebra()
            .monomial(basis)
            .ok_or_else(|| Error::Contract("non-monomial label".into()))?;
        out.push((*j, sign, mono));
    }
    out.sort_by_key(|&(j, _, _)| j);
    Ok(out)
}

/// Structural shape of one differential column, as recognized by the audit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ColumnCase {
    /// Leading deep label, no satellite.
    DeepSingle,
    /// Leading deep label with an `x1` satellite.
    DeepWithX1,
    /// Leading `x2` or `x3`, no satellite; the product with the parent's
    /// label vanishes.
    LowSingle,
    /// Leading `x2`/`x3` with `x1` satellite under a deep-labeled parent.
    LowWithX1Deep,
    /// Leading `x2`/`x3` with `x1` satellite under a variable-labeled parent.
    LowWithX1Shallow,
    /// Leading `x4`, no satellite, parent labeled by a deep label.
    X4Single,
    /// Leading `x4` with an `x1` satellite over a two-term deep-led parent.
    X4WithX1,
    /// Leading `x4` with one `x2`/`x3` satellite and one `x1` satellite.
    X4Triple,
    /// Leading `x4` with a single variable satellite matching the parent's
    /// leading label.
    X4WithLow,
    /// Leading `x1`, always alone.
    X1Single,
}

impl ColumnCase {
    pub fn name(&self) -> &'static str {
        match self {
            ColumnCase::DeepSingle => "deep-single",
            ColumnCase::DeepWithX1 => "deep-with-x1",
            ColumnCase::LowSingle => "low-single",
            ColumnCase::LowWithX1Deep => "low-with-x1-deep",
            ColumnCase::LowWithX1Shallow => "low-with-x1-shallow",
            ColumnCase::X4Single => "x4-single",
            ColumnCase::X4WithX1 => "x4-with-x1",
            ColumnCase::X4Triple => "x4-triple",
            ColumnCase::X4WithLow => "x4-with-low",
            ColumnCase::X1Single => "x1-single",
        }
    }
}

/// Result of auditing the structural hypotheses on a symbolic resolution.
#[derive(Clone, Debug)]
pub struct HypothesisAudit {
    pub ordering_ok: bool,
    pub poset_ok: bool,
    pub cover_ok: bool,
    pub boundary_ok: bool,
    pub d_squared_ok: bool,
    pub case_histogram: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl HypothesisAudit {
    pub fn passed(&self) -> bool {
        self.ordering_ok && self.poset_ok && self.cover_ok && self.boundary_ok && self.d_squared_ok
    }
}

struct ColumnView {
    /// (target order index, label index, signed coefficient), sorted by row.
    entries: Vec<(usize, usize, BigRational)>,
}

fn column_view(sym: &SymbolicResolution, n: usize, e: usize) -> Result<ColumnView> {
    let mut entries = Vec::new();
    for (j, elem) in &sym.res.differential(n).columns[e] {
        if elem.num_terms() != 1 {
            return Err(Error::Contract(format!(
                "column {e} of d_{n} has a multi-term entry"
            )));
        }
        let (basis, c) = elem.support().next().unwrap();
        if !c.abs().is_one() {
            return Err(Error::Contract(format!(
                "column {e} of d_{n} has a non-unit coefficient {c}"
            )));
        }
        let label = sym.labels.classify(basis).ok_or_else(|| {
            Error::Contract(format!("column {e} of d_{n} uses a non-label monomial"))
        })?;
        entries.push((*j, label, c.clone()));
    }
    entries.sort_by_key(|&(j, _, _)| j);
    Ok(ColumnView { entries })
}

/// Leading data of generator `j` in module `i`: (label index, target order
/// index).
fn leading_of(sym: &SymbolicResolution, i: usize, j: usize) -> Result<(usize, usize)> {
    let view = column_view(sym, i, j)?;
    let &(target, label, _) = view
        .entries
        .first()
        .ok_or_else(|| Error::Contract("empty differential column".into()))?;
    Ok((label, target))
}

fn classify_column(sym: &SymbolicResolution, n: usize, e: usize) -> Result<ColumnCase> {
    let view = column_view(sym, n, e)?;
    let entries = &view.entries;
    let &(j, s, _) = entries
        .first()
        .ok_or_else(|| Error::Contract("empty column".into()))?;
    let deep = [L_X2_DEEP, L_X3_DEEP, L_X4_DEEP];
    let parent_label = if n >= 2 {
        Some(leading_of(sym, n - 1, j)?)
    } else {
        None
    };
    let err = |msg: String| Err(Error::Contract(format!("d_{n} column {e}: {msg}")));

    match entries.len() {
        1 => match s {
            L_X1 => Ok(ColumnCase::X1Single),
            L_X2 | L_X3 => {
                if let Some((t, _)) = parent_label {
                    if sym
                        .alg
                        .mul_basis(sym.labels.basis[s], sym.labels.basis[t])
                        .is_some()
                    {
                        return err(format!(
                            "single low column whose product with parent label {} is nonzero",
                            sym.labels.monomials[t]
                        ));
                    }
                }
                Ok(ColumnCase::LowSingle)
            }
            L_X4 => {
                if let Some((t, _)) = parent_label {
                    if !deep.contains(&t) {
                        return err("single x4 column under a non-deep parent".into());
                    }
                }
                Ok(ColumnCase::X4Single)
            }
            _ => Ok(ColumnCase::DeepSingle),
        },
        2 => {
            let (j2, q, _) = entries[1];
            if deep.contains(&s) {
                if q != L_X1 {
                    return err("deep leading label with a non-x1 satellite".into());
                }
                if n >= 2 {
                    let (t, _) = parent_label.unwrap();
                    if t != L_X4 {
                        return err("deep two-term column under a non-x4 parent".into());
                    }
                    let (t2, _) = leading_of(sym, n - 1, j2)?;
                    if t2 != L_X4_DEEP {
                        return err("deep two-term satellite target not led by x4^m".into());
                    }
                }
                return Ok(ColumnCase::DeepWithX1);
            }
            if s == L_X2 || s == L_X3 {
                if q != L_X1 {
                    return err("low leading label with a non-x1 satellite".into());
                }
                let (t, gamma) = parent_label
                    .ok_or_else(|| Error::Contract("two-term low column in degree one".into()))?;
                if sym
                    .alg
                    .mul_basis(sym.labels.basis[s], sym.labels.basis[t])
                    .is_none()
                {
                    return err("two-term low column whose lead kills the parent label".into());
                }
                let (t2, gamma2) = leading_of(sym, n - 1, j2)?;
                if t == L_X2_DEEP || t == L_X3_DEEP {
                    if t2 != L_X4_DEEP || gamma2 != gamma {
                        return err(
                            "deep-parent satellite must be led by x4^m over the same target"
                                .into(),
                        );
                    }
                    Ok(ColumnCase::LowWithX1Deep)
                } else if t == L_X1 || t == L_X2 || t == L_X3 {
                    if t2 != L_X4 || gamma2 != gamma {
                        return err(
                            "short-parent satellite must be led by x4 over the same target".into(),
                        );
                    }
                    Ok(ColumnCase::LowWithX1Shallow)
                } else {
                    err(format!(
                        "unexpected parent label {}",
                        sym.labels.monomials[t]
                    ))
                }
            } else if s == L_X4 {
                if q == L_X1 {
                    // Either the parent is itself two-term with a deep lead
                    // and an x1 satellite, or the parent is a lone x1 column.
                    let parent_view = column_view(sym, n - 1, j)?;
                    match parent_view.entries.as_slice() {
                        [(_, t, _), (gamma2, _, _)] if deep.contains(t) => {
                            let (t2, target2) = leading_of(sym, n - 1, j2)?;
                            if t2 != L_X4 || target2 != *gamma2 {
                                return err("satellite must be led by x4 over the parent's satellite target".into());
                            }
                            Ok(ColumnCase::X4WithX1)
                        }
                        [(gamma, L_X1, _)] => {
                            let (t2, target2) = leading_of(sym, n - 1, j2)?;
                            if t2 != L_X4 || target2 != *gamma {
                                return err(
                                    "satellite must be led by x4 over the same target".into()
                                );
                            }
                            Ok(ColumnCase::X4WithLow)
                        }
                        _ => err("x4 column with x1 satellite over an unexpected parent".into()),
                    }
                } else if q == L_X2 || q == L_X3 {
                    let (t, gamma) = parent_label
                        .ok_or_else(|| Error::Contract("two-term x4 column in degree one".into()))?;
                    if t != q {
                        return err("satellite label must equal the parent's leading label".into());
                    }
                    let (t2, gamma2) = leading_of(sym, n - 1, j2)?;
                    if t2 != L_X4 || gamma2 != gamma {
                        return err("satellite must be led by x4 over the same target".into());
                    }
                    Ok(ColumnCase::X4WithLow)
                } else {
                    err("x4 leading label with a deep satellite".into())
                }
            } else {
                err("two-term column led by x1".into())
            }
        }
        3 => {
            let (j2, t_sat, _) = entries[1];
            let (j3, one_sat, _) = entries[2];
            if s != L_X4 {
                return err("three-term column not led by x4".into());
            }
            if !(t_sat == L_X2 || t_sat == L_X3) || one_sat != L_X1 {
                return err("three-term column with unexpected satellite labels".into());
            }
            let parent_view = column_view(sym, n - 1, j)?;
            let [(gamma, t, _), (gamma2, _, _)] = parent_view.entries.as_slice() else {
                return err("three-term column over a non-two-term parent".into());
            };
            if *t != t_sat {
                return err("three-term satellite label differs from the parent's lead".into());
            }
            let (lead2, target2) = leading_of(sym, n - 1, j2)?;
            if lead2 != L_X4 || target2 != *gamma {
                return err("first satellite must be led by x4 over the parent's lead target".into());
            }
            let (lead3, target3) = leading_of(sym, n - 1, j3)?;
            if lead3 != L_X4 || target3 != *gamma2 {
                return err(
                    "second satellite must be led by x4 over the parent's satellite target".into(),
                );
            }
            Ok(ColumnCase::X4Triple)
        }
        k => err(format!("column has {k} terms")),
    }
}

/// Runs the structural audits plus the composition check on a symbolic
/// resolution: distinct ordered leading data, the coefficient poset, the
/// cover rules, the recognized column shapes, and d o d = 0.
pub fn audit_hypotheses(sym: &SymbolicResolution) -> HypothesisAudit {
    let mut audit = HypothesisAudit {
        ordering_ok: true,
        poset_ok: true,
        cover_ok: true,
        boundary_ok: true,
        d_squared_ok: true,
        case_histogram: BTreeMap::new(),
        failures: Vec::new(),
    };
    let res = &sym.res;
    let top = res.top_degree();

    // Ordering: pairwise distinct leading data, ascending in (target, label).
    for n in 1..=top {
        let mut seen: Vec<(usize, Monomial)> = Vec::new();
        for e in 0..res.modules[n].len() {
            match column_view(sym, n, e) {
                Ok(view) => {
                    let &(j, l, _) = view.entries.first().unwrap();
                    let key = (j, sym.labels.monomials[l]);
                    if let Some(last) = seen.last() {
                        if *last >= key {
                            audit.ordering_ok = false;
                            audit
                                .failures
                                .push(format!("d_{n} column {e}: leading data out of order"));
                        }
                    }
                    seen.push(key);
                }
                Err(err) => {
                    audit.ordering_ok = false;
                    audit.failures.push(err.to_string());
                }
            }
        }
    }

    // Coefficient poset: non-leading labels strictly below the leading label.
    for n in 1..=top {
        for e in 0..res.modules[n].len() {
            let Ok(view) = column_view(sym, n, e) else {
                continue;
            };
            let s = view.entries[0].1;
            for &(_, q, _) in view.entries.iter().skip(1) {
                if !poset_strictly_below(q, s) {
                    audit.poset_ok = false;
                    audit.failures.push(format!(
                        "d_{n} column {e}: coefficient {} not below {}",
                        sym.labels.monomials[q], sym.labels.monomials[s]
                    ));
                }
            }
        }
    }

    // Cover: child labels of each generator match the rules exactly.
    for i in 0..top {
        let id_to_order: HashMap<usize, usize> = res.modules[i]
            .iter()
            .map(|g| (g.id, g.order_index))
            .collect();
        let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
        for g in &res.modules[i + 1] {
            let po = g.tree_parent.and_then(|pid| id_to_order.get(&pid).copied());
            let label = g.edge_label.and_then(|basis| sym.labels.classify(basis));
            let (Some(po), Some(label)) = (po, label) else {
                audit.cover_ok = false;
                audit.failures.push(format!(
                    "module {} generator {} lacks tree data",
                    i + 1,
                    g.order_index
                ));
                continue;
            };
            children.entry(po).or_default().push(label);
        }
        for (po, g) in res.modules[i].iter().enumerate() {
            let expect: &[usize] = match g.edge_label {
                None => &[L_X1, L_X2, L_X3, L_X4],
                Some(basis) => match sym.labels.classify(basis) {
                    Some(l) => cover_children(l),
                    None => {
                        audit.cover_ok = false;
                        continue;
                    }
                },
            };
            let got = children.remove(&po).unwrap_or_default();
            if got != expect {
                audit.cover_ok = false;
                audit.failures.push(format!(
                    "module {i} generator {po}: children labels {got:?} differ from the cover rule"
                ));
            }
        }
    }

    // Boundary: every column matches one of the recognized shapes.
    for n in 1..=top {
        for e in 0..res.modules[n].len() {
            match classify_column(sym, n, e) {
                Ok(case) => *audit.case_histogram.entry(case.name()).or_insert(0) += 1,
                Err(err) => {
                    audit.boundary_ok = false;
                    audit.failures.push(err.to_string());
                }
            }
        }
    }

    // Composition: d o d = 0 by exact algebra arithmetic.
    for n in 2..=top {
        for e in 0..res.modules[n].len() {
            let combo = &res.differential(n).columns[e];
            match sym.apply_differential(n - 1, combo) {
                Ok(image) => {
                    if !image.is_empty() {
                        audit.d_squared_ok = false;
                        audit
                            .failures
                            .push(format!("d_{} o d_{n} nonzero at column {e}", n - 1));
                    }
                }
                Err(err) => {
                    audit.d_squared_ok = false;
                    audit.failures.push(err.to_string());
                }
            }
        }
    }

    audit
}
