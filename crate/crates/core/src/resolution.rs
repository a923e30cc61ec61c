//! Brute-force resolution engine.
//!
//! Builds the minimal graded free resolution of the residue field over a
//! parallelepiped algebra step by step: the kernel of each differential is
//! computed per multidegree by exact nullspace extraction, minimal generators
//! are chosen as canonical echelon representatives of kernel modulo
//! (maximal ideal times kernel), and the next free module is attached with one
//! generator per representative.
//!
//! Because the algebra grading is multiplicity-free, the graded component of a
//! free module at a multidegree has at most one coordinate per generator, and
//! every homogeneous differential entry is a scalar multiple of a single basis
//! element. The leading term of a homogeneous element is its
//! smallest-generator coordinate; echelon pivots in that coordinate order give
//! generators with pairwise distinct leading data, which the engine asserts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::fpa::{FpaAlgebra, FpaElement};
use crate::lattice::LatticePoint;
use crate::linalg::{self, QVec};
use crate::poly::MultiPoly;
use crate::{Error, Result};

/// One generator of a free module in the resolution.
#[derive(Clone, Debug)]
pub struct GeneratorRecord {
    /// Global id across the whole resolution.
    pub id: usize,
    pub homological_degree: usize,
    pub multidegree: LatticePoint,
    /// Position in the generator order of its module.
    pub order_index: usize,
    /// Global id of the generator carrying the leading term of the image.
    pub tree_parent: Option<usize>,
    /// Algebra basis index of the leading coefficient of the image.
    pub edge_label: Option<usize>,
}

/// Differential columns: per source generator, the finitely supported map
/// from target generator order-indices to algebra elements, sorted by row.
#[derive(Clone, Debug, Default)]
pub struct Differential {
    pub columns: Vec<Vec<(usize, FpaElement)>>,
}

/// A partial free resolution `F_0 <- F_1 <- ... <- F_n`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub(crate) modules: Vec<Vec<GeneratorRecord>>,
    /// `differentials[i]` maps `F_{i+1}` to `F_i`.
    pub(crate) differentials: Vec<Differential>,
    pub(crate) next_id: usize,
}

/// Kernel of one differential, split by multidegree.
pub struct GradedKernel {
    pub blocks: BTreeMap<LatticePoint, KernelBlock>,
}

/// Kernel vectors at one multidegree, in reduced echelon form with respect to
/// the leading-term coordinate order.
pub struct KernelBlock {
    /// Component coordinates `(generator order-index, algebra basis index)`,
    /// ascending in the generator order.
    pub coords: Vec<(usize, usize)>,
    pub vectors: Vec<QVec>,
    /// Pivot positions into `coords`, one per vector.
    pub pivots: Vec<usize>,
}

impl GradedKernel {
    pub fn total_dimension(&self) -> usize {
        self.blocks.values().map(|b| b.vectors.len()).sum()
    }
}

/// A chosen minimal generator of a kernel: its multidegree and its expansion
/// over the source module.
pub struct KernelVector {
    pub multidegree: LatticePoint,
    /// Leading data: source generator order-index and basis index.
    pub leading: (usize, usize),
    /// Column form: (source generator order-index, coefficient).
    pub column: Vec<(usize, FpaElement)>,
}

impl Resolution {
    /// The rank-one module `F_0` with its generator in degree zero.
    pub fn initial(alg: &FpaAlgebra) -> Resolution {
        let ambient = alg.multidegree(0).dim();
        Resolution {
            modules: vec![vec![GeneratorRecord {
                id: 0,
                homological_degree: 0,
                multidegree: LatticePoint::zero(ambient),
                order_index: 0,
                tree_parent: None,
                edge_label: None,
            }]],
            differentials: Vec::new(),
            next_id: 1,
        }
    }

    /// Builds `F_0 <- ... <- F_steps` from scratch.
    pub fn build(alg: &FpaAlgebra, steps: usize, workers: usize) -> Result<Resolution> {
        let mut res = Resolution::initial(alg);
        for _ in 0..steps {
            extend_resolution(&mut res, alg, workers)?;
        }
        Ok(res)
    }

    /// Number of built homological degrees (top module index).
    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, i: usize) -> &[GeneratorRecord] {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[Vec<GeneratorRecord>] {
        &self.modules
    }

    /// The differential `d_n : F_n -> F_{n-1}`, `n >= 1`.
    pub fn differential(&self, n: usize) -> &Differential {
        &self.differentials[n - 1]
    }

    /// Total Betti number: the rank of `F_i`.
    pub fn betti(&self, i: usize) -> usize {
        self.modules[i].len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.len()).collect()
    }

    /// Multigraded Betti numbers at homological degree `i`.
    pub fn betti_row(&self, i: usize) -> BTreeMap<LatticePoint, usize> {
        let mut row = BTreeMap::new();
        for g in &self.modules[i] {
            *row.entry(g.multidegree.clone()).or_insert(0) += 1;
        }
        row
    }

    /// JSON dump: generators and differential entries by basis index with
    /// exact rational coefficients.
    pub fn to_json(&self, alg: &FpaAlgebra) -> serde_json::Value {
        let modules: Vec<serde_json::Value> = self
            .modules
            .iter()
            .map(|gens| {
                serde_json::Value::Array(
                    gens.iter()
                        .map(|g| {
                            serde_json::json!({
                                "id": g.id,
                                "order_index": g.order_index,
                                "multidegree": g.multidegree.to_json(),
                                "tree_parent": g.tree_parent,
                                "edge_label": g.edge_label.map(|l| alg.label(l).to_string()),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        let differentials: Vec<serde_json::Value> = self
            .differentials
            .iter()
            .map(|d| {
                serde_json::Value::Array(
                    d.columns
                        .iter()
                        .map(|col| {
                            serde_json::Value::Array(
                                col.iter()
                                    .flat_map(|(row, elem)| {
                                        elem.support().map(move |(basis, c)| {
                                            serde_json::json!({
                                                "row": row,
                                                "basis": basis,
                                                "coeff": c.to_string(),
                                            })
                                        })
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "modules": modules, "differentials": differentials })
    }
}

/// Sum of the Betti monomials `y^alpha` over the generators of `F_i`.
pub fn betti_polynomial(res: &Resolution, i: usize) -> Result<MultiPoly> {
    if i >= res.modules.len() {
        return Err(Error::Range(format!(
            "homological degree {i} beyond built range {}",
            res.top_degree()
        )));
    }
    let num_y = res.modules[0][0].multidegree.dim();
    let mut out = MultiPoly::zero(num_y);
    for g in &res.modules[i] {
        out = out.add(&MultiPoly::y_monomial(num_y, &g.multidegree));
    }
    Ok(out)
}

/// All multidegrees in which the source of `d_n` has a nonzero component.
fn source_degrees(res: &Resolution, n: usize, alg: &FpaAlgebra) -> BTreeSet<LatticePoint> {
    let mut degrees = BTreeSet::new();
    for g in &res.modules[n] {
        for p in 0..alg.dim() {
            degrees.insert(g.multidegree.add(alg.multidegree(p)));
        }
    }
    degrees
}

/// Component coordinates of module `n` at multidegree `alpha`.
fn component(
    res: &Resolution,
    n: usize,
    alg: &FpaAlgebra,
    alpha: &LatticePoint,
) -> Vec<(usize, usize)> {
    res.modules[n]
        .iter()
        .filter_map(|g| {
            alg.index_of_degree(&alpha.sub(&g.multidegree))
                .map(|p| (g.order_index, p))
        })
        .collect()
}

/// The matrix of `d_n` restricted to degree `alpha`, rows indexed by the
/// target component, columns by the source component.
fn component_matrix(
    res: &Resolution,
    n: usize,
    alg: &FpaAlgebra,
    src: &[(usize, usize)],
    tgt: &[(usize, usize)],
) -> Vec<QVec> {
    let d = res.differential(n);
    let tgt_pos: HashMap<usize, usize> =
        tgt.iter().enumerate().map(|(r, &(j, _))| (j, r)).collect();
    let mut mat = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
    for (c, &(k, p)) in src.iter().enumerate() {
        for (j, elem) in &d.columns[k] {
            let image = alg.mul_basis_element(p, elem);
            if image.is_zero() {
                continue;
            }
            let row = tgt_pos[j];
            let q = tgt[row].1;
            debug_assert!(image.support().all(|(b, _)| b == q));
            mat[row][c] += image.coeff(q);
        }
    }
    mat
}

fn check_homogeneous(res: &Resolution, n: usize, alg: &FpaAlgebra) -> Result<()> {
    let d = res.differential(n);
    for (k, col) in d.columns.iter().enumerate() {
        let src_deg = &res.modules[n][k].multidegree;
        for (j, elem) in col {
            let tgt_deg = &res.modules[n - 1][*j].multidegree;
            for (p, _) in elem.support() {
                if &tgt_deg.add(alg.multidegree(p)) != src_deg {
                    return Err(Error::Contract(format!(
                        "differential d_{n} is not homogeneous at column {k}, row {j}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Graded kernel of `d_n`: for every source multidegree, a reduced echelon
/// basis of the nullspace of the component matrix.
pub fn kernel_basis(
    res: &Resolution,
    n: usize,
    alg: &FpaAlgebra,
    workers: usize,
) -> Result<GradedKernel> {
    check_homogeneous(res, n, alg)?;
    let degrees: Vec<LatticePoint> = source_degrees(res, n, alg).into_iter().collect();
    let compute = |alpha: &LatticePoint| -> Option<(LatticePoint, KernelBlock)> {
        let src = component(res, n, alg, alpha);
        if src.is_empty() {
            return None;
        }
        let tgt = component(res, n - 1, alg, alpha);
        let mat = component_matrix(res, n, alg, &src, &tgt);
        let raw = linalg::nullspace(&mat, src.len());
        if raw.is_empty() {
            return None;
        }
        let (vectors, pivots) = linalg::rref(raw);
        Some((
            alpha.clone(),
            KernelBlock {
                coords: src,
                vectors,
                pivots,
            },
        ))
    };

    let blocks: BTreeMap<LatticePoint, KernelBlock> = if workers <= 1 {
        degrees.iter().filter_map(compute).collect()
    } else {
        std::thread::scope(|scope| {
            let chunk = degrees.len().div_ceil(workers).max(1);
            let handles: Vec<_> = degrees
                .chunks(chunk)
                .map(|slice| {
                    scope.spawn(move || slice.iter().filter_map(compute).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("kernel worker panicked"))
                .collect()
        })
    };
    Ok(GradedKernel { blocks })
}

/// Canonical minimal generators of the kernel: per multidegree, echelon
/// representatives of kernel modulo (maximal ideal) * kernel, ordered by
/// leading data.
pub fn minimal_generators(kernel: &GradedKernel, alg: &FpaAlgebra) -> Result<Vec<KernelVector>> {
    let mut out: Vec<KernelVector> = Vec::new();
    for (alpha, block) in &kernel.blocks {
        // Span of x_g * (kernel in lower degree) inside this component.
        let coord_pos: HashMap<usize, usize> = block
            .coords
            .iter()
            .enumerate()
            .map(|(pos, &(k, _))| (k, pos))
            .collect();
        let mut ideal_multiples: Vec<QVec> = Vec::new();
        for &g in alg.generators() {
            let beta = alpha.sub(alg.multidegree(g));
            let Some(lower) = kernel.blocks.get(&beta) else {
                continue;
            };
            for w in &lower.vectors {
                let mut v = vec![BigRational::zero(); block.coords.len()];
                let mut nonzero = false;
                for (pos, c) in w.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (k, p) = lower.coords[pos];
                    if let Some(r) = alg.mul_basis(g, p) {
                        let slot = coord_pos[&k];
                        debug_assert_eq!(block.coords[slot], (k, r));
                        v[slot] += c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    ideal_multiples.push(v);
                }
            }
        }
        let (u_rows, u_pivots) = linalg::rref(ideal_multiples);
        for upiv in &u_pivots {
            if !block.pivots.contains(upiv) {
                return Err(Error::Contract(format!(
                    "ideal-multiple pivot outside kernel pivots at degree {alpha}"
                )));
            }
        }
        for (row, piv) in block.vectors.iter().zip(&block.pivots) {
            if u_pivots.contains(piv) {
                continue;
            }
            // Reduce modulo the ideal multiples for a canonical representative.
            let mut rep = row.clone();
            for (u_row, upiv) in u_rows.iter().zip(&u_pivots) {
                let c = rep[*upiv].clone();
                if !c.is_zero() {
                    for (slot, u) in rep.iter_mut().zip(u_row) {
                        let delta = &c * u;
                        *slot -= delta;
                    }
                }
            }
            let leading = block.coords[*piv];
            let mut column: BTreeMap<usize, FpaElement> = BTreeMap::new();
            for (pos, c) in rep.iter().enumerate() {
                if !c.is_zero() {
                    let (k, p) = block.coords[pos];
                    column
                        .entry(k)
                        .or_insert_with(FpaElement::zero)
                        .add_assign(&FpaElement::term(p, c.clone()));
                }
            }
            out.push(KernelVector {
                multidegree: alpha.clone(),
                leading,
                column: column.into_iter().collect(),
            });
        }
    }
    // Order by leading data: target generator first, then the basis order on
    // the leading coefficient.
    out.sort_by_key(|v| v.leading);
    let mut seen = BTreeSet::new();
    for v in &out {
        if !seen.insert(v.leading) {
            return Err(Error::Contract(format!(
                "duplicate leading data ({}, {}) among minimal generators",
                v.leading.0, v.leading.1
            )));
        }
    }
    Ok(out)
}

/// Attaches one more free module: `F_{n+1}` with a generator per minimal
/// kernel generator of `d_n` (or per algebra generator when only `F_0`
/// exists).
pub fn extend_resolution(res: &mut Resolution, alg: &FpaAlgebra, workers: usize) -> Result<usize> {
    let n = res.top_degree();
    let new: Vec<KernelVector> = if n == 0 {
        // Kernel of the augmentation F_0 -> K is the maximal ideal.
        alg.generators()
            .iter()
            .map(|&g| KernelVector {
                multidegree: alg.multidegree(g).clone(),
                leading: (0, g),
                column: vec![(0, FpaElement::basis(g))],
            })
            .collect()
    } else {
        let kernel = kernel_basis(res, n, alg, workers)?;
        minimal_generators(&kernel, alg)?
    };
    let hom = n + 1;
    let mut gens = Vec::with_capacity(new.len());
    let mut columns = Vec::with_capacity(new.len());
    for (idx, v) in new.into_iter().enumerate() {
        let parent = &res.modules[n][v.leading.0];
        gens.push(GeneratorRecord {
            id: res.next_id,
            homological_degree: hom,
            multidegree: v.multidegree,
            order_index: idx,
            tree_parent: Some(parent.id),
            edge_label: Some(v.leading.1),
        });
        res.next_id += 1;
        columns.push(v.column);
    }
    let count = gens.len();
    res.modules.push(gens);
    res.differentials.push(Differential { columns });
    Ok(count)
}

/// Outcome of the structural checks on a resolution.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub passed: bool,
    pub d_squared_zero: bool,
    pub homogeneous: bool,
    pub minimal: bool,
    pub exact: bool,
    pub first_failure: Option<String>,
}

impl VerifyReport {
    fn fresh() -> Self {
        VerifyReport {
            passed: true,
            d_squared_zero: true,
            homogeneous: true,
            minimal: true,
            exact: true,
            first_failure: None,
        }
    }

    fn fail(&mut self, flag: Flag, msg: String) {
        match flag {
            Flag::DSquared => self.d_squared_zero = false,
            Flag::Homogeneous => self.homogeneous = false,
            Flag::Minimal => self.minimal = false,
            Flag::Exact => self.exact = false,
        }
        self.passed = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }
}

enum Flag {
    DSquared,
    Homogeneous,
    Minimal,
    Exact,
}

/// Checks the resolution: consecutive differentials compose to zero, entries
/// are homogeneous and lie in the maximal ideal, and the built part is exact
/// (kernel dimension equals image dimension at every inner step).
pub fn verify_resolution(res: &Resolution, alg: &FpaAlgebra, workers: usize) -> VerifyReport {
    let mut report = VerifyReport::fresh();

    for n in 1..=res.top_degree() {
        if let Err(e) = check_homogeneous(res, n, alg) {
            report.fail(Flag::Homogeneous, e.to_string());
        }
    }

    for n in 1..=res.top_degree() {
        let d = res.differential(n);
        for (k, col) in d.columns.iter().enumerate() {
            for (j, elem) in col {
                if !elem.coeff(0).is_zero() {
                    report.fail(
                        Flag::Minimal,
                        format!("unit entry in d_{n} at column {k}, row {j}"),
                    );
                }
            }
        }
    }

    for n in 2..=res.top_degree() {
        let d_hi = res.differential(n);
        let d_lo = res.differential(n - 1);
        for (k, col) in d_hi.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, FpaElement> = BTreeMap::new();
            for (j, elem) in col {
                for (l, elem2) in &d_lo.columns[*j] {
                    match alg.multiply(elem, elem2) {
                        Ok(prod) => {
                            acc.entry(*l).or_insert_with(FpaElement::zero).add_assign(&prod);
                        }
                        Err(e) => report.fail(Flag::DSquared, e.to_string()),
                    }
                }
            }
            if acc.values().any(|e| !e.is_zero()) {
                report.fail(
                    Flag::DSquared,
                    format!("d_{} o d_{} is nonzero at column {k}", n - 1, n),
                );
            }
        }
    }

    // Exactness at F_n for 1 <= n < top: dim ker d_n = rank d_{n+1},
    // blockwise over the multidegrees. Component matrices only make sense for
    // homogeneous differentials, so skip when that already failed.
    if !report.homogeneous {
        return report;
    }
    for n in 1..res.top_degree() {
        let kernel = match kernel_basis(res, n, alg, workers) {
            Ok(k) => k,
            Err(e) => {
                report.fail(Flag::Exact, e.to_string());
                continue;
            }
        };
        let mut image_rank = 0usize;
        for alpha in source_degrees(res, n + 1, alg) {
            let src = component(res, n + 1, alg, &alpha);
            if src.is_empty() {
                continue;
            }
            let tgt = component(res, n, alg, &alpha);
            let mat = component_matrix(res, n + 1, alg, &src, &tgt);
            image_rank += linalg::rank(&mat);
        }
        let kernel_dim = kernel.total_dimension();
        if kernel_dim != image_rank {
            report.fail(
                Flag::Exact,
                format!(
                    "exactness fails at F_{n}: dim ker d_{n} = {kernel_dim} but rank d_{} = {image_rank}",
                    n + 1
                ),
            );
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpa::{build_presented, Monomial};

    /// Expansion of the closed-form Betti series by its linear recurrence:
    /// b_0 = 1, b_1 = 4, b_n = 4 b_{n-1} - b_{n-2}.
    fn betti_oracle(upto: usize) -> Vec<usize> {
        let mut v = vec![1usize, 4];
        for n in 2..=upto {
            v.push(4 * v[n - 1] - v[n - 2]);
        }
        v.truncate(upto + 1);
        v
    }

    #[test]
    fn first_extension_gives_the_four_variables() {
        let alg = build_presented(2).unwrap();
        let mut res = Resolution::initial(&alg);
        extend_resolution(&mut res, &alg, 1).unwrap();
        assert_eq!(res.betti(1), 4);
        let labels: Vec<Monomial> = res.modules[1]
            .iter()
            .map(|g| alg.monomial(g.edge_label.unwrap()).unwrap())
            .collect();
        assert_eq!(
            labels,
            vec![
                Monomial::var(1),
                Monomial::var(2),
                Monomial::var(3),
                Monomial::var(4)
            ]
        );
    }

    #[test]
    fn second_extension_gives_fifteen() {
        for m in [1u32, 2] {
            let alg = build_presented(m).unwrap();
            let res = Resolution::build(&alg, 2, 1).unwrap();
            assert_eq!(res.betti_numbers(), vec![1, 4, 15]);
        }
    }

    #[test]
    fn kernel_blocks_inside_ideal_multiples_yield_no_generators() {
        // The kernel of d_1 is much bigger than its minimal generating set:
        // all the extra vectors are ideal multiples and produce nothing.
        let alg = build_presented(2).unwrap();
        let res = Resolution::build(&alg, 1, 1).unwrap();
        let kernel = kernel_basis(&res, 1, &alg, 1).unwrap();
        let gens = minimal_generators(&kernel, &alg).unwrap();
        assert_eq!(gens.len(), 15);
        assert!(kernel.total_dimension() > 15);
    }

    #[test]
    fn betti_numbers_match_recurrence_for_m2_through_degree_4() {
        let alg = build_presented(2).unwrap();
        let res = Resolution::build(&alg, 4, 1).unwrap();
        assert_eq!(res.betti_numbers(), betti_oracle(4), "expected 1, 4, 15, 56, 209");
    }

    #[test]
    fn kernel_of_zero_map_is_entire_source() {
        let alg = build_presented(1).unwrap();
        let mut res = Resolution::initial(&alg);
        extend_resolution(&mut res, &alg, 1).unwrap();
        // Replace d_1 by the zero map: every component becomes kernel.
        res.differentials[0] = Differential {
            columns: vec![Vec::new(); 4],
        };
        let kernel = kernel_basis(&res, 1, &alg, 1).unwrap();
        assert_eq!(kernel.total_dimension(), 4 * alg.dim());
    }

    #[test]
    fn graded_kernel_dimensions_sum_to_ungraded_nullity() {
        let alg = build_presented(2).unwrap();
        let res = Resolution::build(&alg, 3, 1).unwrap();
        for n in 1..=3usize {
            let kernel = kernel_basis(&res, n, &alg, 1).unwrap();
            // Ungraded matrix over all (generator, basis) coordinates.
            let src: Vec<(usize, usize)> = (0..res.modules[n].len())
                .flat_map(|k| (0..alg.dim()).map(move |p| (k, p)))
                .collect();
            let tgt: Vec<(usize, usize)> = (0..res.modules[n - 1].len())
                .flat_map(|j| (0..alg.dim()).map(move |q| (j, q)))
                .collect();
            let tgt_pos: HashMap<(usize, usize), usize> =
                tgt.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut mat = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
            for (c, &(k, p)) in src.iter().enumerate() {
                for (j, elem) in &res.differential(n).columns[k] {
                    let image = alg.mul_basis_element(p, elem);
                    for (q, coeff) in image.support() {
                        mat[tgt_pos[&(*j, q)]][c] += coeff;
                    }
                }
            }
            let ungraded = linalg::nullspace(&mat, src.len()).len();
            assert_eq!(kernel.total_dimension(), ungraded, "degree {n}");
        }
    }

    #[test]
    fn workers_do_not_change_the_resolution() {
        let alg = build_presented(2).unwrap();
        let seq = Resolution::build(&alg, 3, 1).unwrap();
        let par = Resolution::build(&alg, 3, 4).unwrap();
        assert_eq!(seq.betti_numbers(), par.betti_numbers());
        for n in 1..=3 {
            assert_eq!(seq.differential(n).columns, par.differential(n).columns);
        }
    }

    #[test]
    fn verify_passes_on_engine_output() {
        let alg = build_presented(2).unwrap();
        let res = Resolution::build(&alg, 3, 1).unwrap();
        let report = verify_resolution(&res, &alg, 1);
        assert!(report.passed, "failure: {:?}", report.first_failure);
    }

    #[test]
    fn verify_flags_unit_entries() {
        let alg = build_presented(1).unwrap();
        let mut res = Resolution::build(&alg, 2, 1).unwrap();
        // Inject a unit coefficient into d_2.
        res.differentials[1].columns[0].push((3, FpaElement::basis(0)));
        let report = verify_resolution(&res, &alg, 1);
        assert!(!report.passed);
        assert!(!report.minimal);
    }

    #[test]
    fn verify_flags_broken_composition() {
        let alg = build_presented(1).unwrap();
        let mut res = Resolution::build(&alg, 2, 1).unwrap();
        // Redirect one entry of d_2 so that d_1 o d_2 is no longer zero.
        let col = &mut res.differentials[1].columns[5];
        col[0].1 = FpaElement::basis(4);
        let report = verify_resolution(&res, &alg, 1);
        assert!(!report.passed);
    }

    #[test]
    fn betti_polynomial_fine_degrees() {
        let alg = build_presented(2).unwrap();
        let res = Resolution::build(&alg, 2, 1).unwrap();
        let p0 = betti_polynomial(&res, 0).unwrap();
        assert!(p0.is_one());
        let p1 = betti_polynomial(&res, 1).unwrap();
        assert_eq!(p1.num_terms(), 4);
        let p2 = betti_polynomial(&res, 2).unwrap();
        // 15 generators at rank two; the multidegrees deg(x1)+deg(x2) and
        // deg(x1)+deg(x3) each carry two generators.
        let total: num_bigint::BigInt = p2.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, num_bigint::BigInt::from(15));
        assert!(betti_polynomial(&res, 3).is_err());
    }

    #[test]
    fn engine_works_over_the_semigroup_form() {
        // Same Betti numbers from the isomorphic semigroup presentation.
        let alg = crate::fpa::build_fpa_from_simplex(&crate::lattice::delta2(1).unwrap()).unwrap();
        let res = Resolution::build(&alg, 3, 1).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 4, 15, 56]);
    }

    #[test]
    fn minimality_of_generators_over_m1_through_degree_3() {
        let alg = build_presented(1).unwrap();
        let res = Resolution::build(&alg, 3, 1).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 4, 15, 56]);
        let report = verify_resolution(&res, &alg, 1);
        assert!(report.passed, "failure: {:?}", report.first_failure);
    }
}
