//! Finding chain maps and homotopies by solving integer linear systems.
//!
//! Each unknown `ZG`-matrix entry contributes `|G|` integer unknowns (its
//! coefficients); each `ZG`-matrix equation contributes `|G|` integer
//! equations per entry. The system is solved through Smith normal form.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::{FiniteGroupTable, GroupRingElement, GroupRingMatrix};

use super::complex::{ChainComplex, ChainError};
use super::integer::IntegerMatrix;
use super::maps::{span, verify_equivalence, ChainMapCert, EquivalenceCertificate};
use super::snf::solve_integer_system;

#[derive(Clone, Copy)]
struct Block {
    offset: usize,
    rows: usize,
    cols: usize,
}

struct System<'a> {
    table: &'a FiniteGroupTable,
    unknowns: usize,
    equations: usize,
    coefficients: Vec<(usize, usize, BigInt)>,
    rhs: Vec<BigInt>,
}

impl<'a> System<'a> {
    fn new(table: &'a FiniteGroupTable) -> Self {
        System {
            table,
            unknowns: 0,
            equations: 0,
            coefficients: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn order(&self) -> usize {
        self.table.order()
    }

    fn unknown_block(&mut self, rows: usize, cols: usize) -> Block {
        let b = Block {
            offset: self.unknowns,
            rows,
            cols,
        };
        self.unknowns += rows * cols * self.order();
        b
    }

    /// Reserves a `rows x cols` matrix equation with the given right side.
    fn equation_block(&mut self, rhs: &GroupRingMatrix) -> Block {
        let n = self.order();
        let b = Block {
            offset: self.equations,
            rows: rhs.rows(),
            cols: rhs.cols(),
        };
        self.equations += rhs.rows() * rhs.cols() * n;
        for r in 0..rhs.rows() {
            for c in 0..rhs.cols() {
                let entry = rhs.get(r, c);
                for g in 0..n {
                    self.rhs.push(entry.coefficient_of_element(g));
                }
            }
        }
        b
    }

    fn index(&self, b: Block, r: usize, c: usize, g: usize) -> usize {
        b.offset + (r * b.cols + c) * self.order() + g
    }

    /// Adds `sign * (X ∘ fixed)` to equation block `eq`, i.e. entry `(k, j)`
    /// gains `Σ_l fixed[l][j] * X[k][l]`.
    fn unknown_then_fixed(&mut self, eq: Block, x: Block, fixed: &GroupRingMatrix, sign: i64) {
        for k in 0..eq.rows {
            for j in 0..eq.cols {
                for l in 0..fixed.rows() {
                    let Some(terms) = fixed.get(l, j).tabular_terms() else {
                        continue;
                    };
                    for (&h, coeff) in terms {
                        for g in 0..self.order() {
                            // h * g
                            let e = self.table.mul(h, g);
                            let row = self.index(eq, k, j, e);
                            let col = self.index(x, k, l, g);
                            self.coefficients.push((row, col, coeff * sign));
                        }
                    }
                }
            }
        }
    }

    /// Adds `sign * (fixed ∘ X)` to equation block `eq`, i.e. entry `(k, j)`
    /// gains `Σ_l X[l][j] * fixed[k][l]`.
    fn fixed_then_unknown(&mut self, eq: Block, fixed: &GroupRingMatrix, x: Block, sign: i64) {
        for k in 0..eq.rows {
            for j in 0..eq.cols {
                for l in 0..fixed.cols() {
                    let Some(terms) = fixed.get(k, l).tabular_terms() else {
                        continue;
                    };
                    for (&h, coeff) in terms {
                        for g in 0..self.order() {
                            // g * h
                            let e = self.table.mul(g, h);
                            let row = self.index(eq, k, j, e);
                            let col = self.index(x, l, j, g);
                            self.coefficients.push((row, col, coeff * sign));
                        }
                    }
                }
            }
        }
    }

    /// Forces block `x` to equal `value`.
    fn pin(&mut self, x: Block, value: &GroupRingMatrix) {
        for r in 0..x.rows {
            for c in 0..x.cols {
                let entry = value.get(r, c);
                for g in 0..self.order() {
                    let col = self.index(x, r, c, g);
                    self.scalar_equation(vec![(col, BigInt::from(1))], entry.coefficient_of_element(g));
                }
            }
        }
    }

    fn scalar_equation(&mut self, terms: Vec<(usize, BigInt)>, rhs: BigInt) {
        let row = self.equations;
        self.equations += 1;
        self.rhs.push(rhs);
        for (col, coeff) in terms {
            self.coefficients.push((row, col, coeff));
        }
    }

    fn solve(&self) -> Option<Vec<BigInt>> {
        let mut a = IntegerMatrix::zeros(self.equations, self.unknowns);
        for (r, c, v) in &self.coefficients {
            *a.get_mut(*r, *c) += v;
        }
        solve_integer_system(&a, &self.rhs)
    }

    fn read(&self, solution: &[BigInt], b: Block) -> GroupRingMatrix {
        let mut m = GroupRingMatrix::zeros(b.rows, b.cols, crate::group::Flavor::Tabular);
        for r in 0..b.rows {
            for c in 0..b.cols {
                let terms = (0..self.order())
                    .map(|g| (solution[self.index(b, r, c, g)].clone(), g))
                    .filter(|(v, _)| !v.is_zero());
                m.set(r, c, GroupRingElement::from_elements(terms));
            }
        }
        m
    }
}

fn shared_table<'a>(a: &'a ChainComplex, b: &ChainComplex) -> Result<&'a FiniteGroupTable, ChainError> {
    if a.ring() != b.ring() {
        return Err(ChainError::RingMismatch);
    }
    a.ring().table().ok_or(ChainError::SymbolicNotSupported)
}

/// Adds unknowns for a chain map `source -> target` with its commuting squares
/// and augmentation condition.
fn chain_map_unknowns(sys: &mut System<'_>, source: &ChainComplex, target: &ChainComplex) -> Vec<Block> {
    let degrees = span(source, target);
    let blocks: Vec<Block> = (0..degrees)
        .map(|i| sys.unknown_block(target.rank(i), source.rank(i)))
        .collect();
    for i in 1..degrees {
        let zero = GroupRingMatrix::zeros(target.rank(i - 1), source.rank(i), source.ring().flavor());
        let eq = sys.equation_block(&zero);
        sys.fixed_then_unknown(eq, &target.boundary(i), blocks[i], 1);
        sys.unknown_then_fixed(eq, blocks[i - 1], &source.boundary(i), -1);
    }
    if let (Some(src), Some(tgt)) = (source.augmentation(), target.augmentation()) {
        for (j, want) in src.iter().enumerate() {
            let mut terms = Vec::new();
            for (k, weight) in tgt.iter().enumerate() {
                for g in 0..sys.order() {
                    terms.push((sys.index(blocks[0], k, j, g), weight.clone()));
                }
            }
            sys.scalar_equation(terms, want.clone());
        }
    }
    blocks
}

fn homotopy_unknowns(sys: &mut System<'_>, c: &ChainComplex, degrees: usize) -> Vec<Block> {
    (0..degrees.saturating_sub(1))
        .map(|i| sys.unknown_block(c.rank(i + 1), c.rank(i)))
        .collect()
}

/// Adds `∂_{i+1} h_i + h_{i-1} ∂_i` with the given sign to equation `eq`.
fn add_homotopy_terms(sys: &mut System<'_>, eq: Block, c: &ChainComplex, h: &[Block], i: usize, sign: i64) {
    if let Some(&hi) = h.get(i) {
        sys.fixed_then_unknown(eq, &c.boundary(i + 1), hi, sign);
    }
    if i >= 1 {
        sys.unknown_then_fixed(eq, h[i - 1], &c.boundary(i), sign);
    }
}

/// Some chain map `source -> target`, augmentation-compatible in degree 0 when
/// both complexes are augmented, or `None` if the commuting-square system has
/// no integer solution.
pub fn solve_chain_map(
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<Option<ChainMapCert>, ChainError> {
    solve_pinned_chain_map(source, target, &[])
}

/// As [`solve_chain_map`], with the components listed in `pins` fixed.
fn solve_pinned_chain_map(
    source: &ChainComplex,
    target: &ChainComplex,
    pins: &[(usize, GroupRingMatrix)],
) -> Result<Option<ChainMapCert>, ChainError> {
    let table = shared_table(source, target)?;
    let mut sys = System::new(table);
    let blocks = chain_map_unknowns(&mut sys, source, target);
    for (degree, value) in pins {
        sys.pin(blocks[*degree], value);
    }
    let Some(solution) = sys.solve() else {
        return Ok(None);
    };
    let maps = blocks.iter().map(|&b| sys.read(&solution, b)).collect();
    ChainMapCert::new(source.clone(), target.clone(), maps).map(Some)
}

/// Homotopy `h` on `c` with `f_i - 1 = ∂_{i+1} h_i + h_{i-1} ∂_i`, where `f` is
/// a chain self-map of `c`, or `None` if no integer solution exists.
pub fn solve_homotopy(c: &ChainComplex, f: &ChainMapCert) -> Result<Option<Vec<GroupRingMatrix>>, ChainError> {
    let table = shared_table(c, c)?;
    if &f.source != c || &f.target != c {
        return Err(ChainError::Dimension("homotopy needs a self-map of the complex".into()));
    }
    let degrees = f.degrees();
    let mut sys = System::new(table);
    let blocks = homotopy_unknowns(&mut sys, c, degrees);
    for i in 0..degrees {
        let rhs = f
            .component(i)
            .sub(&GroupRingMatrix::identity(c.rank(i), c.ring()))?;
        let eq = sys.equation_block(&rhs);
        add_homotopy_terms(&mut sys, eq, c, &blocks, i, 1);
    }
    let Some(solution) = sys.solve() else {
        return Ok(None);
    };
    Ok(Some(blocks.iter().map(|&b| sys.read(&solution, b)).collect()))
}

/// Completes a chain map `φ` to an equivalence: solves for `ψ` and both
/// homotopies at once, which is a linear problem once `φ` is fixed.
pub fn solve_homotopy_inverse(forward: &ChainMapCert) -> Result<Option<EquivalenceCertificate>, ChainError> {
    let (source, target) = (&forward.source, &forward.target);
    let table = shared_table(source, target)?;
    let degrees = forward.degrees();
    let mut sys = System::new(table);
    let psi = chain_map_unknowns(&mut sys, target, source);
    let h_source = homotopy_unknowns(&mut sys, source, degrees);
    let h_target = homotopy_unknowns(&mut sys, target, degrees);
    for (i, &psi_i) in psi.iter().enumerate() {
        let phi = forward.component(i);
        // ψ_i φ_i - ∂h - h∂ = 1 on the source
        let eq = sys.equation_block(&GroupRingMatrix::identity(source.rank(i), source.ring()));
        sys.unknown_then_fixed(eq, psi_i, &phi, 1);
        add_homotopy_terms(&mut sys, eq, source, &h_source, i, -1);
        // φ_i ψ_i - ∂h - h∂ = 1 on the target
        let eq = sys.equation_block(&GroupRingMatrix::identity(target.rank(i), target.ring()));
        sys.fixed_then_unknown(eq, &phi, psi_i, 1);
        add_homotopy_terms(&mut sys, eq, target, &h_target, i, -1);
    }
    let Some(solution) = sys.solve() else {
        return Ok(None);
    };
    let read = |blocks: &[Block]| blocks.iter().map(|&b| sys.read(&solution, b)).collect::<Vec<_>>();
    let backward = ChainMapCert::new(target.clone(), source.clone(), read(&psi))?;
    EquivalenceCertificate::new(forward.clone(), backward, read(&h_source), read(&h_target)).map(Some)
}

/// Forward maps tried by [`search_equivalence`]: every choice of `±1` pinned
/// on the degrees where the ranks agree (including none), remaining
/// components solved.
fn forward_candidates(source: &ChainComplex, target: &ChainComplex) -> Vec<Vec<(usize, GroupRingMatrix)>> {
    let square: Vec<usize> = (0..span(source, target))
        .filter(|&i| source.rank(i) == target.rank(i) && source.rank(i) > 0)
        .collect();
    let mut out = Vec::new();
    for signs in 0..3usize.pow(square.len() as u32) {
        let mut pins = Vec::new();
        let mut code = signs;
        for &degree in &square {
            let id = GroupRingMatrix::identity(source.rank(degree), source.ring());
            match code % 3 {
                0 => pins.push((degree, id)),
                1 => pins.push((degree, id.neg())),
                _ => {}
            }
            code /= 3;
        }
        out.push(pins);
    }
    out.sort_by_key(|pins| std::cmp::Reverse(pins.len()));
    out
}

/// Bounded search for a chain homotopy equivalence. Forward maps come from
/// pinning `±1` on degrees of equal rank and solving for the rest; each is
/// completed by [`solve_homotopy_inverse`]. Returns the first candidate that
/// verifies.
pub fn search_equivalence(
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<Option<EquivalenceCertificate>, ChainError> {
    shared_table(source, target)?;
    if source == target {
        let e = EquivalenceCertificate::identity(source);
        if verify_equivalence(&e)?.passed() {
            return Ok(Some(e));
        }
    }
    for pins in forward_candidates(source, target) {
        let Some(forward) = solve_pinned_chain_map(source, target, &pins)? else {
            continue;
        };
        if let Some(e) = solve_homotopy_inverse(&forward)? {
            if verify_equivalence(&e)?.passed() {
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}
