//! The fundamental parallelepiped algebra, constructed two ways.
//!
//! Semigroup form: basis indexed by the lattice points of the fundamental
//! parallelepiped, with `e_p * e_q = e_{p+q}` when the sum stays inside the
//! parallelepiped and zero otherwise.
//!
//! Presented form: the quotient
//! `K[x1,x2,x3,x4] / (x1^2, x2^2, x3^2, x4^{m+1}, x1*x2, x1*x3, x2*x4^m,
//! x3*x4^m, x2*x3 - x1*x4)`
//! with the distinguished monomial basis
//! `{1, x1, x4^{l+1}, x1*x4^{l+1}, x2*x4^l, x3*x4^l}` for `0 <= l <= m-1`.
//! Products are computed by exponent rewriting into that basis.
//!
//! [`check_isomorphism`] certifies that the two constructions agree under the
//! variable assignment `x1 -> e_{z_{2m+1}}`, `x2 -> e_{z_{2m+2}}`,
//! `x3 -> e_{z_1}`, `x4 -> e_{z_2}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::{zb_point, LatticePoint, LatticeSimplex};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// A monomial of the distinguished basis: `head * x4^tail`, where `head` is
/// one of `1, x1, x2, x3, x4` (coded 0..=4). Plain powers `x4^k` are stored
/// as head 4 with tail `k - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    head: u8,
    tail: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { head: 0, tail: 0 }
    }

    /// The variable `x_i`, `1 <= i <= 4`.
    pub fn var(i: u8) -> Self {
        assert!((1..=4).contains(&i));
        Monomial { head: i, tail: 0 }
    }

    pub fn new(head: u8, tail: u32) -> Self {
        assert!(head <= 4);
        assert!(head != 0 || tail == 0, "a bare x4 power has head 4");
        Monomial { head, tail }
    }

    pub fn head(&self) -> u8 {
        self.head
    }

    pub fn is_one(&self) -> bool {
        self.head == 0
    }

    /// Exponent vector `(a1, a2, a3, a4)`.
    pub fn exponents(&self) -> [u32; 4] {
        let mut e = [0u32; 4];
        if self.head >= 1 {
            e[(self.head - 1) as usize] += 1;
        }
        e[3] += self.tail;
        e
    }

    /// Total degree under the standard grading (every variable has degree 1).
    pub fn n_degree(&self) -> u32 {
        self.tail + u32::from(self.head != 0)
    }
}

/// The monomial order on the distinguished basis: `x_i*x4^j < x_k*x4^l` iff
/// `j < l`, or `j = l` and `i < k`, with `1 < x1 < x2 < x3 < x4`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.tail, self.head).cmp(&(other.tail, other.head))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x4_pow = self.tail + u32::from(self.head == 4);
        match (self.head, x4_pow) {
            (0, _) => write!(f, "1"),
            (4, 1) => write!(f, "x4"),
            (4, p) => write!(f, "x4^{p}"),
            (h, 0) => write!(f, "x{h}"),
            (h, 1) => write!(f, "x{h}*x4"),
            (h, p) => write!(f, "x{h}*x4^{p}"),
        }
    }
}

/// Rewrites `x1^a1 x2^a2 x3^a3 x4^a4` into the distinguished basis of the
/// presented quotient for parameter `m`, or to zero.
pub fn normal_form(m: u32, exps: [u32; 4]) -> Option<Monomial> {
    let [mut a1, mut a2, mut a3, mut a4] = exps;
    if a1 >= 2 || a2 >= 2 || a3 >= 2 {
        return None;
    }
    if a1 == 1 && (a2 == 1 || a3 == 1) {
        return None;
    }
    if a2 == 1 && a3 == 1 {
        // x2*x3 rewrites to x1*x4.
        a1 = 1;
        a2 = 0;
        a3 = 0;
        a4 += 1;
    }
    if a1 == 1 {
        // x1*x4^k survives up to k = m.
        (a4 <= m).then_some(Monomial { head: 1, tail: a4 })
    } else if a2 == 1 {
        (a4 < m).then_some(Monomial { head: 2, tail: a4 })
    } else if a3 == 1 {
        (a4 < m).then_some(Monomial { head: 3, tail: a4 })
    } else if a4 >= 1 {
        (a4 <= m).then_some(Monomial { head: 4, tail: a4 - 1 })
    } else {
        Some(Monomial::one())
    }
}

/// Label of a basis element: a parallelepiped point (semigroup form) or a
/// normal-form monomial (presented form).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    Point(LatticePoint),
    Monomial(Monomial),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Point(p) => write!(f, "e{p}"),
            BasisLabel::Monomial(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraKind {
    Semigroup,
    Presented { m: u32 },
}

/// A finite-dimensional commutative graded algebra given by an indexed basis
/// and a structure-constant table. Index 0 is the multiplicative identity,
/// every structure constant is 0 or 1, and the grading by lattice points is
/// multiplicity-free (each multidegree carries at most one basis element).
#[derive(Clone, Debug)]
pub struct FpaAlgebra {
    kind: AlgebraKind,
    labels: Vec<BasisLabel>,
    /// Row-major `dim x dim`: `Some(k)` means `b_i * b_j = b_k`, `None` zero.
    mult_table: Vec<Option<usize>>,
    multidegree: Vec<LatticePoint>,
    n_degree: Vec<u32>,
    degree_index: HashMap<LatticePoint, usize>,
    /// Basis indices of the minimal algebra generators (the elements outside
    /// the square of the maximal ideal).
    generators: Vec<usize>,
}

impl FpaAlgebra {
    fn assemble(
        kind: AlgebraKind,
        labels: Vec<BasisLabel>,
        mult_table: Vec<Option<usize>>,
        multidegree: Vec<LatticePoint>,
    ) -> Result<Self> {
        let n_degree = multidegree
            .iter()
            .map(|p| {
                p.height()
                    .to_u32()
                    .ok_or_else(|| Error::Contract("negative or huge height".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut degree_index = HashMap::new();
        for (i, p) in multidegree.iter().enumerate() {
            if degree_index.insert(p.clone(), i).is_some() {
                return Err(Error::Contract(format!(
                    "multidegree {p} occurs twice; grading is not multiplicity-free"
                )));
            }
        }
        let mut alg = FpaAlgebra {
            kind,
            labels,
            mult_table,
            multidegree,
            n_degree,
            degree_index,
            generators: Vec::new(),
        };
        alg.validate()?;
        alg.generators = alg.compute_generators();
        Ok(alg)
    }

    /// Identity, commutativity and grading checks for the structure constants.
    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for j in 0..dim {
            if self.mul_basis(0, j) != Some(j) {
                return Err(Error::Contract(format!("identity fails at index {j}")));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let ij = self.mul_basis(i, j);
                if ij != self.mul_basis(j, i) {
                    return Err(Error::Contract(format!("commutativity fails at ({i},{j})")));
                }
                if let Some(k) = ij {
                    let expected = self.multidegree[i].add(&self.multidegree[j]);
                    if self.multidegree[k] != expected {
                        return Err(Error::Contract(format!(
                            "grading fails at ({i},{j}) -> {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis elements of the maximal ideal not lying in its square.
    fn compute_generators(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut in_square = vec![false; dim];
        for i in 1..dim {
            for j in 1..dim {
                if let Some(k) = self.mul_basis(i, j) {
                    in_square[k] = true;
                }
            }
        }
        (1..dim).filter(|&k| !in_square[k]).collect()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &BasisLabel {
        &self.labels[i]
    }

    /// The presented-form monomial behind basis index `i`, if this algebra is
    /// in presented form.
    pub fn monomial(&self, i: usize) -> Option<Monomial> {
        match &self.labels[i] {
            BasisLabel::Monomial(m) => Some(*m),
            BasisLabel::Point(_) => None,
        }
    }

    pub fn multidegree(&self, i: usize) -> &LatticePoint {
        &self.multidegree[i]
    }

    pub fn n_degree(&self, i: usize) -> u32 {
        self.n_degree[i]
    }

    /// Basis index carrying the given multidegree, if any.
    pub fn index_of_degree(&self, p: &LatticePoint) -> Option<usize> {
        self.degree_index.get(p).copied()
    }

    /// Basis index of a presented-form monomial, if present in the basis.
    pub fn index_of_monomial(&self, mono: Monomial) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| matches!(l, BasisLabel::Monomial(x) if *x == mono))
    }

    /// Minimal algebra generators (basis indices), ascending.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Structure constant: `b_i * b_j` as a basis index, or `None` for zero.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        self.mult_table[i * self.dim() + j]
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, a: &FpaElement, b: &FpaElement) -> Result<FpaElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&i, ca) in &a.coeffs {
            for (&j, cb) in &b.coeffs {
                if let Some(k) = self.mul_basis(i, j) {
                    let entry = acc.entry(k).or_insert_with(BigRational::zero);
                    *entry += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(FpaElement { coeffs: acc })
    }

    /// Product of a basis element with an element; cheaper than [`Self::multiply`].
    pub fn mul_basis_element(&self, i: usize, e: &FpaElement) -> FpaElement {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&j, c) in &e.coeffs {
            if let Some(k) = self.mul_basis(i, j) {
                let entry = acc.entry(k).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        FpaElement { coeffs: acc }
    }

    fn check_element(&self, e: &FpaElement) -> Result<()> {
        match e.coeffs.last_key_value() {
            Some((&i, _)) if i >= self.dim() => Err(Error::Mismatch(format!(
                "element supported on index {i} against algebra of dimension {}",
                self.dim()
            ))),
            _ => Ok(()),
        }
    }

    pub fn format_element(&self, e: &FpaElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let one = BigRational::from(BigInt::from(1));
        let minus_one = BigRational::from(BigInt::from(-1));
        let mut parts = Vec::new();
        for (&i, c) in &e.coeffs {
            if *c == one {
                parts.push(format!("{}", self.labels[i]));
            } else if *c == minus_one {
                parts.push(format!("-{}", self.labels[i]));
            } else {
                parts.push(format!("{c}*{}", self.labels[i]));
            }
        }
        parts.join(" + ")
    }

    /// Hilbert series by total degree: coefficient of `t^k` counts basis
    /// elements of degree `k`.
    pub fn hilbert_series(&self) -> UniPoly {
        let max = self.n_degree.iter().copied().max().unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); max + 1];
        for &h in &self.n_degree {
            coeffs[h as usize] += 1;
        }
        UniPoly::new(coeffs)
    }

    /// JSON dump with 1-based basis indices in the table; 0 marks a zero
    /// product.
    pub fn to_json(&self) -> serde_json::Value {
        let dim = self.dim();
        let basis: Vec<serde_json::Value> = (0..dim)
            .map(|i| {
                serde_json::json!({
                    "index": i + 1,
                    "label": self.labels[i].to_string(),
                    "multidegree": self.multidegree[i].to_json(),
                    "n_degree": self.n_degree[i],
                })
            })
            .collect();
        let table: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match self.mul_basis(i, j) {
                        Some(k) => (k + 1) as u64,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "kind": match self.kind {
                AlgebraKind::Semigroup => "semigroup".to_string(),
                AlgebraKind::Presented { m } => format!("presented(m={m})"),
            },
            "dimension": dim,
            "basis": basis,
            "mult_table": table,
        })
    }
}

/// An element: a finitely supported rational coefficient map over the basis.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FpaElement {
    coeffs: BTreeMap<usize, BigRational>,
}

impl FpaElement {
    pub fn zero() -> Self {
        FpaElement::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, BigRational::from(BigInt::from(1)));
        FpaElement { coeffs }
    }

    pub fn term(i: usize, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(i, c);
        }
        FpaElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest supported basis index: the leading monomial in the basis order.
    pub fn leading_basis_index(&self) -> Option<usize> {
        self.coeffs.last_key_value().map(|(&i, _)| i)
    }

    pub fn add_assign(&mut self, other: &FpaElement) {
        for (&i, c) in &other.coeffs {
            let entry = self.coeffs.entry(i).or_insert_with(BigRational::zero);
            *entry += c;
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn sub_assign(&mut self, other: &FpaElement) {
        for (&i, c) in &other.coeffs {
            let entry = self.coeffs.entry(i).or_insert_with(BigRational::zero);
            *entry -= c;
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn scale(&mut self, k: &BigRational) {
        if k.is_zero() {
            self.coeffs.clear();
            return;
        }
        for c in self.coeffs.values_mut() {
            *c *= k;
        }
    }

    pub fn scaled(&self, k: &BigRational) -> FpaElement {
        let mut out = self.clone();
        out.scale(k);
        out
    }
}

/// Semigroup construction: basis indexed by the parallelepiped points of `s`,
/// products by exact decomposition of point sums.
pub fn build_fpa_from_simplex(s: &LatticeSimplex) -> Result<FpaAlgebra> {
    let points = s.enumerate_pip();
    let dim = points.len();
    let index: HashMap<&LatticePoint, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = vec![None; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let sum = points[i].add(&points[j]);
            let hit = if s.contains_in_pip(&sum) {
                Some(index[&sum])
            } else {
                None
            };
            table[i * dim + j] = hit;
            table[j * dim + i] = hit;
        }
    }
    let labels = points.iter().cloned().map(BasisLabel::Point).collect();
    FpaAlgebra::assemble(AlgebraKind::Semigroup, labels, table, points)
}

/// Degrees of `x1..x4` in the lattice, through the parallelepiped-point
/// assignment for `delta2(m)`.
pub fn variable_degrees(m: u32) -> Result<[LatticePoint; 4]> {
    Ok([
        zb_point(m, 2 * m as i64 + 1)?,
        zb_point(m, 2 * m as i64 + 2)?,
        zb_point(m, 1)?,
        zb_point(m, 2)?,
    ])
}

/// Lattice degree of an exponent vector under [`variable_degrees`].
pub fn exponent_degree(var_degrees: &[LatticePoint; 4], exps: [u32; 4]) -> LatticePoint {
    let mut p = LatticePoint::zero(var_degrees[0].dim());
    for (k, &e) in exps.iter().enumerate() {
        if e > 0 {
            p = p.add(&var_degrees[k].scaled(&BigInt::from(e)));
        }
    }
    p
}

/// Presented construction: the distinguished monomial basis with products by
/// exponent rewriting.
pub fn build_presented(m: u32) -> Result<FpaAlgebra> {
    if m < 1 {
        return Err(Error::InvalidParameter("build_presented requires m >= 1".into()));
    }
    let mut monomials = vec![Monomial::one()];
    for head in 1..=4u8 {
        for tail in 0..=m {
            let candidate = Monomial { head, tail };
            if normal_form(m, candidate.exponents()) == Some(candidate) {
                monomials.push(candidate);
            }
        }
    }
    monomials.sort();
    if monomials.len() != (4 * m + 2) as usize {
        return Err(Error::Contract(format!(
            "expected {} basis monomials, found {}",
            4 * m + 2,
            monomials.len()
        )));
    }

    let var_degrees = variable_degrees(m)?;
    let degrees: Vec<LatticePoint> = monomials
        .iter()
        .map(|mono| exponent_degree(&var_degrees, mono.exponents()))
        .collect();

    let dim = monomials.len();
    let index: HashMap<Monomial, usize> =
        monomials.iter().enumerate().map(|(i, &mo)| (mo, i)).collect();
    let mut table = vec![None; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let a = monomials[i].exponents();
            let b = monomials[j].exponents();
            let prod = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
            let hit = normal_form(m, prod).map(|mono| index[&mono]);
            table[i * dim + j] = hit;
            table[j * dim + i] = hit;
        }
    }
    let labels = monomials.into_iter().map(BasisLabel::Monomial).collect();
    FpaAlgebra::assemble(AlgebraKind::Presented { m }, labels, table, degrees)
}

/// Outcome of comparing the two constructions.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub holds: bool,
    /// Presented basis index -> semigroup basis index, when the map is a
    /// bijection.
    pub bijection: Option<Vec<usize>>,
    /// First failing product pair `(i, j)` in presented indices, if any.
    pub counterexample: Option<(usize, usize)>,
}

/// Verifies that `map` carries the structure constants of `a` onto those of
/// `b`; returns the first failing pair otherwise.
pub fn verify_structure_map(
    a: &FpaAlgebra,
    b: &FpaAlgebra,
    map: &[usize],
) -> std::result::Result<(), (usize, usize)> {
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = a.mul_basis(i, j).map(|k| map[k]);
            let rhs = b.mul_basis(map[i], map[j]);
            if lhs != rhs {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Builds both forms for `delta2(m)`, extends the variable assignment
/// multiplicatively, and certifies that it is a structure-preserving bijection
/// of bases.
pub fn check_isomorphism(m: u32) -> Result<IsoCertificate> {
    let presented = build_presented(m)?;
    let semigroup = build_fpa_from_simplex(&crate::lattice::delta2(m)?)?;
    if presented.dim() != semigroup.dim() {
        return Ok(IsoCertificate {
            holds: false,
            bijection: None,
            counterexample: None,
        });
    }
    // The multiplicative extension of the variable assignment sends a basis
    // monomial to the parallelepiped point equal to its lattice degree.
    let mut map = Vec::with_capacity(presented.dim());
    for i in 0..presented.dim() {
        match semigroup.index_of_degree(presented.multidegree(i)) {
            Some(j) => map.push(j),
            None => {
                return Ok(IsoCertificate {
                    holds: false,
                    bijection: None,
                    counterexample: Some((i, i)),
                })
            }
        }
    }
    let mut seen = vec![false; semigroup.dim()];
    for &j in &map {
        if seen[j] {
            return Ok(IsoCertificate {
                holds: false,
                bijection: None,
                counterexample: None,
            });
        }
        seen[j] = true;
    }
    match verify_structure_map(&presented, &semigroup, &map) {
        Ok(()) => Ok(IsoCertificate {
            holds: true,
            bijection: Some(map),
            counterexample: None,
        }),
        Err(pair) => Ok(IsoCertificate {
            holds: false,
            bijection: Some(map),
            counterexample: Some(pair),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::delta2;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn monomial_order_matches_basis_listing() {
        let x1 = Monomial::var(1);
        let x4 = Monomial::var(4);
        let x1x4 = Monomial::new(1, 1);
        let x4sq = Monomial::new(4, 1);
        let x2x4 = Monomial::new(2, 1);
        assert!(Monomial::one() < x1);
        assert!(x1 < Monomial::var(2));
        assert!(Monomial::var(3) < x4);
        assert!(x4 < x1x4);
        assert!(x1x4 < x2x4);
        assert!(x2x4 < Monomial::new(3, 1));
        assert!(Monomial::new(3, 1) < x4sq);
    }

    #[test]
    fn dimensions_are_4m_plus_2() {
        for m in 1..=6 {
            let presented = build_presented(m).unwrap();
            assert_eq!(presented.dim(), (4 * m + 2) as usize);
            let semigroup = build_fpa_from_simplex(&delta2(m).unwrap()).unwrap();
            assert_eq!(semigroup.dim(), (4 * m + 2) as usize);
        }
    }

    #[test]
    fn identity_multiplies_trivially() {
        let alg = build_presented(2).unwrap();
        for j in 0..alg.dim() {
            assert_eq!(alg.mul_basis(0, j), Some(j));
        }
    }

    #[test]
    fn squared_height_one_generator_vanishes() {
        // e_{z1}^2 = 0 in the semigroup form.
        for m in 1..=3u32 {
            let s = delta2(m).unwrap();
            let alg = build_fpa_from_simplex(&s).unwrap();
            let z1 = zb_point(m, 1).unwrap();
            let i = alg.index_of_degree(&z1).unwrap();
            assert_eq!(alg.mul_basis(i, i), None);
            let e = FpaElement::basis(i);
            assert!(alg.multiply(&e, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn z2_times_z2m1_reaches_top_at_m2() {
        // z_2 + z_{2m+1} stays in the parallelepiped when m = 2.
        let alg = build_fpa_from_simplex(&delta2(2).unwrap()).unwrap();
        let i = alg.index_of_degree(&zb_point(2, 2).unwrap()).unwrap();
        let j = alg.index_of_degree(&zb_point(2, 7).unwrap()).unwrap();
        let k = alg.mul_basis(i, j).expect("product must be nonzero");
        assert_eq!(alg.multidegree(k), &zb_point(2, 9).unwrap());
    }

    #[test]
    fn presented_products_by_rewriting() {
        // m = 1: x2 * x3 = x1 * x4.
        let alg1 = build_presented(1).unwrap();
        let i2 = alg1.index_of_monomial(Monomial::var(2)).unwrap();
        let i3 = alg1.index_of_monomial(Monomial::var(3)).unwrap();
        let expect = alg1.index_of_monomial(Monomial::new(1, 1)).unwrap();
        assert_eq!(alg1.mul_basis(i2, i3), Some(expect));

        // m = 2: x4^2 * x4 = 0 and x2x4 * x3 = x1*x4^2.
        let alg2 = build_presented(2).unwrap();
        let x4sq = alg2.index_of_monomial(Monomial::new(4, 1)).unwrap();
        let x4 = alg2.index_of_monomial(Monomial::var(4)).unwrap();
        assert_eq!(alg2.mul_basis(x4sq, x4), None);
        let x2x4 = alg2.index_of_monomial(Monomial::new(2, 1)).unwrap();
        let x3 = alg2.index_of_monomial(Monomial::var(3)).unwrap();
        let x1x4sq = alg2.index_of_monomial(Monomial::new(1, 2)).unwrap();
        assert_eq!(alg2.mul_basis(x2x4, x3), Some(x1x4sq));
    }

    #[test]
    fn associativity_exhaustive_small_m() {
        for m in 1..=3u32 {
            for alg in [
                build_presented(m).unwrap(),
                build_fpa_from_simplex(&delta2(m).unwrap()).unwrap(),
            ] {
                let dim = alg.dim();
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            let left = alg.mul_basis(i, j).and_then(|ij| alg.mul_basis(ij, k));
                            let right = alg.mul_basis(j, k).and_then(|jk| alg.mul_basis(i, jk));
                            assert_eq!(left, right, "associativity at ({i},{j},{k}), m={m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generators_are_the_four_height_one_elements() {
        for m in 1..=4u32 {
            let alg = build_presented(m).unwrap();
            assert_eq!(alg.generators(), &[1, 2, 3, 4]);
            for &g in alg.generators() {
                assert_eq!(alg.n_degree(g), 1);
            }
            let semi = build_fpa_from_simplex(&delta2(m).unwrap()).unwrap();
            assert_eq!(semi.generators().len(), 4);
        }
    }

    #[test]
    fn hilbert_series_counts_heights() {
        let h1 = build_presented(1).unwrap().hilbert_series();
        assert_eq!(h1.coeffs(), &[BigInt::from(1), BigInt::from(4), BigInt::from(1)]);
        let h2 = build_presented(2).unwrap().hilbert_series();
        assert_eq!(
            h2.coeffs(),
            &[BigInt::from(1), BigInt::from(4), BigInt::from(4), BigInt::from(1)]
        );
        for m in 1..=6u32 {
            let h = build_presented(m).unwrap().hilbert_series();
            assert_eq!(h.eval_at_one(), BigInt::from(4 * m + 2));
        }
    }

    #[test]
    fn multiply_respects_additive_identity() {
        let m = 2;
        let alg = build_fpa_from_simplex(&delta2(m).unwrap()).unwrap();
        let idx = |b: i64| alg.index_of_degree(&zb_point(m, b).unwrap()).unwrap();
        // e_{z1} * e_{z_{2m+2}} = e_{z2} * e_{z_{2m+1}}.
        let lhs = alg
            .multiply(&FpaElement::basis(idx(1)), &FpaElement::basis(idx(6)))
            .unwrap();
        let rhs = alg
            .multiply(&FpaElement::basis(idx(2)), &FpaElement::basis(idx(5)))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn multiply_rejects_foreign_elements() {
        let alg = build_presented(1).unwrap();
        let stray = FpaElement::basis(17);
        assert!(matches!(
            alg.multiply(&stray, &FpaElement::basis(0)),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn element_arithmetic_normalizes() {
        let mut a = FpaElement::basis(3);
        a.add_assign(&FpaElement::term(3, q(-1)));
        assert!(a.is_zero());
        let mut b = FpaElement::term(2, q(5));
        b.scale(&q(0));
        assert!(b.is_zero());
    }

    #[test]
    fn isomorphism_holds_for_small_m() {
        for m in 1..=5 {
            let cert = check_isomorphism(m).unwrap();
            assert!(cert.holds, "isomorphism certificate failed at m={m}");
            let bij = cert.bijection.unwrap();
            assert_eq!(bij[0], 0);
        }
    }

    #[test]
    fn perturbed_table_is_detected() {
        let presented = build_presented(2).unwrap();
        let semigroup = build_fpa_from_simplex(&delta2(2).unwrap()).unwrap();
        let map = check_isomorphism(2).unwrap().bijection.unwrap();
        let mut broken = presented.clone();
        // Swap one nonzero product to a wrong target.
        let dim = broken.dim();
        let (pos, old) = broken
            .mult_table
            .iter()
            .enumerate()
            .find(|(p, e)| e.is_some() && *p / dim >= 1 && *p % dim >= 1)
            .map(|(p, e)| (p, e.unwrap()))
            .unwrap();
        broken.mult_table[pos] = Some(if old == 0 { 1 } else { old - 1 });
        assert!(verify_structure_map(&broken, &semigroup, &map).is_err());
        let _ = presented;
    }

    /// Fixture data for the smallest family member: the published
    /// Hilbert-basis columns use variable roles that are the
    /// (x1 <-> x3, x2 <-> x4) permutation of the canonical assignment used
    /// here, and every binomial in its toric ideal balances degreewise.
    #[test]
    fn m1_fixture_columns_and_relations() {
        // Hilbert basis columns for the m = 1 simplex, fixture naming:
        // rays V1, V2, V3, then fx1..fx4.
        let v: [LatticePoint; 3] = [
            LatticePoint::from_i64(&[1, 0, 1]),
            LatticePoint::from_i64(&[1, 1, 0]),
            LatticePoint::from_i64(&[1, -2, -3]),
        ];
        let fx: [LatticePoint; 4] = [
            LatticePoint::from_i64(&[1, 0, 0]),
            LatticePoint::from_i64(&[1, 0, -1]),
            LatticePoint::from_i64(&[1, -1, -1]),
            LatticePoint::from_i64(&[1, -1, -2]),
        ];
        // The canonical variable degrees are the fixture columns permuted by
        // (x1 x3)(x2 x4).
        let deg = variable_degrees(1).unwrap();
        assert_eq!(deg[0], fx[2]);
        assert_eq!(deg[1], fx[3]);
        assert_eq!(deg[2], fx[0]);
        assert_eq!(deg[3], fx[1]);

        // Toric relations of the fixture, as (monomial, monomial) pairs over
        // (V1, V2, V3, fx1..fx4) exponent vectors; each pair must balance.
        let relations: [([u32; 7], [u32; 7]); 9] = [
            ([1, 0, 0, 0, 1, 0, 0], [0, 0, 0, 2, 0, 0, 0]), // V1*fx2 = fx1^2
            ([0, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 1]), // V2*V3 = fx2*fx4
            ([0, 1, 0, 0, 0, 0, 1], [0, 0, 0, 0, 2, 0, 0]), // V2*fx4 = fx2^2
            ([0, 0, 1, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 2]), // V3*fx2 = fx4^2
            ([1, 0, 0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 1, 0]), // V1*fx4 = fx1*fx3
            ([0, 0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 1, 1, 0]), // fx1*fx4 = fx2*fx3
            ([0, 1, 0, 0, 0, 1, 0], [0, 0, 0, 1, 1, 0, 0]), // V2*fx3 = fx1*fx2
            ([0, 0, 1, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1, 1]), // V3*fx1 = fx3*fx4
            ([1, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 2, 0]), // V1*V3 = fx3^2
        ];
        let columns: Vec<&LatticePoint> = v.iter().chain(fx.iter()).collect();
        for (lhs, rhs) in &relations {
            let total = |exps: &[u32; 7]| {
                let mut p = LatticePoint::zero(3);
                for (col, &e) in columns.iter().zip(exps) {
                    if e > 0 {
                        p = p.add(&col.scaled(&BigInt::from(e)));
                    }
                }
                p
            };
            assert_eq!(total(lhs), total(rhs));
        }
    }
}
