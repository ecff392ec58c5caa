//! Codes under a prime-order automorphism.
//!
//! A permutation `σ` acts on vectors by moving coordinate `i` to `σ(i)`. For
//! `σ` of prime order `p` with `c` cycles of length `p` and `f` fixed points,
//! the code splits as `F ⊕ E` where `F` is the fixed subcode and `E` the
//! subcode with even weight on every cycle and zero on every fixed point.
//! Projection `π` keeps one coordinate per orbit (cycles first, then fixed
//! points); `φ` reads each cycle of an `E` word as a polynomial in which `σ`
//! acts as multiplication by `x`.

use std::fmt;

use num_integer::Integer;

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::modfield::{conjugate_ip, hermitian_ip, mult_order_of_2, PElement, PField};
use crate::util::is_prime;

/// A permutation of `0..n`, stored by images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "image list is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds `σ` on `0..n` from disjoint cycles (0-based).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (j, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::InvalidArgument(format!(
                        "cycles are not disjoint or exceed {n} points"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(j + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Reads either `n` space-separated 1-based images on one line or cycle
    /// notation such as `(1 2 3)(4 5 6)`; `n` is required for cycle notation
    /// only when points beyond the largest mentioned one exist.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let body: String = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join(" ");
        let parse_point = |tok: &str| -> Result<usize> {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("bad point {tok:?}"),
            })?;
            v.checked_sub(1).ok_or_else(|| Error::Parse {
                line: 0,
                msg: "points are 1-based".into(),
            })
        };
        if body.contains('(') {
            let mut cycles = Vec::new();
            let mut max = 0;
            for chunk in body.split('(').skip(1) {
                let inner = chunk.split(')').next().unwrap_or("");
                let cycle = inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(parse_point)
                    .collect::<Result<Vec<_>>>()?;
                max = cycle.iter().copied().fold(max, |m, x| m.max(x + 1));
                cycles.push(cycle);
            }
            let n = n.unwrap_or(max);
            Self::from_cycles(n, &cycles)
        } else {
            let images = body
                .split_whitespace()
                .map(parse_point)
                .collect::<Result<Vec<_>>>()?;
            if let Some(n) = n {
                if images.len() != n {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("expected {n} images, found {}", images.len()),
                    });
                }
            }
            Self::new(images)
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// All cycles including fixed points, each starting at its least element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    /// `v σ`: coordinate `i` of `v` moves to `σ(i)`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        BitVector::from_indices(v.len(), v.ones_iter().map(|i| self.images[i]))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// One line of 1-based images.
    pub fn to_image_line(&self) -> String {
        self.images
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.len(), self)
    }
}

/// `σ` of prime order `p` seen as `c` cycles and `f` fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    pub p: usize,
    /// Each cycle lists `Ω_i` so that `σ` maps entry `j` to entry `j + 1`.
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
}

impl CycleStructure {
    /// Structure with cycles on consecutive blocks `[jp, (j+1)p)` followed by
    /// `f` fixed points, the layout produced by [`expand_pi_inverse`].
    pub fn standard(p: usize, c: usize, f: usize) -> Self {
        CycleStructure {
            p,
            cycles: (0..c).map(|j| (j * p..(j + 1) * p).collect()).collect(),
            fixed_points: (p * c..p * c + f).collect(),
        }
    }

    pub fn c(&self) -> usize {
        self.cycles.len()
    }

    pub fn f(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn n(&self) -> usize {
        self.p * self.c() + self.f()
    }

    /// `p-(c;f)`.
    pub fn type_label(&self) -> String {
        format!("{}-({};{})", self.p, self.c(), self.f())
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n(), &self.cycles).expect("structure is a partition")
    }

    /// Orbits in π order: cycles, then fixed points.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.cycles
            .iter()
            .cloned()
            .chain(self.fixed_points.iter().map(|&x| vec![x]))
            .collect()
    }

    /// Map sending each coordinate to its standard-form position.
    pub fn standard_relabeling(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (j, cycle) in self.cycles.iter().enumerate() {
            for (t, &a) in cycle.iter().enumerate() {
                images[a] = j * self.p + t;
            }
        }
        for (m, &x) in self.fixed_points.iter().enumerate() {
            images[x] = self.p * self.c() + m;
        }
        Permutation::new(images).expect("relabeling is a bijection")
    }
}

/// Cycle structure of a permutation of prime order.
pub fn cycle_structure(sigma: &Permutation) -> Result<CycleStructure> {
    let order = sigma.order();
    if !is_prime(order as u64) {
        return Err(Error::NotPrimeOrder(order));
    }
    let mut cycles = Vec::new();
    let mut fixed_points = Vec::new();
    for cycle in sigma.cycles() {
        if cycle.len() == 1 {
            fixed_points.push(cycle[0]);
        } else {
            cycles.push(cycle);
        }
    }
    Ok(CycleStructure {
        p: order,
        cycles,
        fixed_points,
    })
}

pub fn is_automorphism(code: &BinaryCode, sigma: &Permutation) -> bool {
    sigma.len() == code.length()
        && code
            .permute(sigma.images())
            .map(|c| c == *code)
            .unwrap_or(false)
}

/// Codewords satisfying the linear conditions `Σ_{j ∈ S} v_j = 0` for each listed set `S`.
fn subcode_with_parities(code: &BinaryCode, sets: &[Vec<usize>]) -> BinaryCode {
    let g = code.generator();
    let mut m = BitMatrix::zeros(g.nrows(), sets.len());
    for (r, row) in g.rows().iter().enumerate() {
        for (s, set) in sets.iter().enumerate() {
            let parity = set.iter().filter(|&&j| row.get(j)).count() % 2 == 1;
            m.set(r, s, parity);
        }
    }
    let combos = m.transpose().kernel_basis();
    let rows = combos
        .rows()
        .iter()
        .map(|x| g.left_mul(x).expect("shape"))
        .collect();
    BinaryCode::from_rows(code.length(), rows).expect("shape")
}

fn require_automorphism(code: &BinaryCode, structure: &CycleStructure) -> Result<()> {
    if structure.n() != code.length() || !is_automorphism(code, &structure.permutation()) {
        return Err(Error::SigmaNotAutomorphism);
    }
    Ok(())
}

/// `F_σ(C)`: codewords fixed by `σ`.
pub fn fixed_subcode(code: &BinaryCode, structure: &CycleStructure) -> Result<BinaryCode> {
    require_automorphism(code, structure)?;
    let pairs: Vec<Vec<usize>> = structure
        .cycles
        .iter()
        .flat_map(|cy| cy.windows(2).map(|w| w.to_vec()))
        .collect();
    Ok(subcode_with_parities(code, &pairs))
}

/// `E_σ(C)`: codewords of even weight on every orbit.
pub fn even_subcode(code: &BinaryCode, structure: &CycleStructure) -> Result<BinaryCode> {
    require_automorphism(code, structure)?;
    Ok(subcode_with_parities(code, &structure.orbits()))
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub fixed: BinaryCode,
    pub even: BinaryCode,
    pub structure: CycleStructure,
}

impl Decomposition {
    /// `F ∩ E = 0` and `dim F + dim E = dim C`.
    pub fn is_direct_sum_of(&self, code: &BinaryCode) -> bool {
        let sum = self.fixed.sum(&self.even).expect("equal lengths");
        self.fixed.dimension() + self.even.dimension() == code.dimension() && sum == *code
    }
}

pub fn decompose(code: &BinaryCode, sigma: &Permutation) -> Result<Decomposition> {
    let structure = cycle_structure(sigma)?;
    Ok(Decomposition {
        fixed: fixed_subcode(code, &structure)?,
        even: even_subcode(code, &structure)?,
        structure,
    })
}

/// `π(F)`: the first coordinate of every orbit, cycles first.
pub fn project_pi(fixed: &BinaryCode, structure: &CycleStructure) -> Result<BinaryCode> {
    if fixed.length() != structure.n() {
        return Err(Error::DimensionMismatch(format!(
            "code of length {} against a structure on {} points",
            fixed.length(),
            structure.n()
        )));
    }
    let sigma = structure.permutation();
    if fixed
        .generator()
        .rows()
        .iter()
        .any(|r| sigma.apply(r) != *r)
    {
        return Err(Error::NotFixed);
    }
    let reps: Vec<usize> = structure.orbits().iter().map(|o| o[0]).collect();
    Ok(fixed.puncture_to(&reps))
}

/// Where each coordinate of a length-`c + f` code lands in its expansion.
fn expansion_targets(len: usize, cycle_coords: &[usize], p: usize) -> Result<Vec<Vec<usize>>> {
    let mut is_cycle = vec![false; len];
    for &i in cycle_coords {
        if i >= len || is_cycle[i] {
            return Err(Error::InvalidArgument(format!(
                "cycle coordinates must be distinct and below {len}"
            )));
        }
        is_cycle[i] = true;
    }
    let c = cycle_coords.len();
    let (mut next_cycle, mut next_fixed) = (0, p * c);
    Ok((0..len)
        .map(|i| {
            if is_cycle[i] {
                let block = (next_cycle * p..(next_cycle + 1) * p).collect();
                next_cycle += 1;
                block
            } else {
                next_fixed += 1;
                vec![next_fixed - 1]
            }
        })
        .collect())
}

/// Expands one vector: cycle coordinates are repeated `p` times.
pub fn expand_vector(v: &BitVector, cycle_coords: &[usize], p: usize) -> Result<BitVector> {
    let targets = expansion_targets(v.len(), cycle_coords, p)?;
    let n = p * cycle_coords.len() + (v.len() - cycle_coords.len());
    Ok(BitVector::from_indices(
        n,
        v.ones_iter().flat_map(|i| targets[i].iter().copied()),
    ))
}

/// `π⁻¹(D)` for the given choice of cycle coordinates.
///
/// The `j`-th cycle coordinate (ascending) becomes the block `[jp, (j+1)p)`;
/// the remaining coordinates follow in order, matching
/// [`CycleStructure::standard`]. A word with `x` ones on cycle coordinates
/// and `y` on fixed coordinates expands to weight `p·x + y`.
pub fn expand_pi_inverse(d: &BinaryCode, cycle_coords: &[usize], p: usize) -> Result<BinaryCode> {
    let mut sorted = cycle_coords.to_vec();
    sorted.sort_unstable();
    let rows = d
        .generator()
        .rows()
        .iter()
        .map(|r| expand_vector(r, &sorted, p))
        .collect::<Result<Vec<_>>>()?;
    let n = p * sorted.len() + d.length() - sorted.len();
    BinaryCode::from_rows(n, rows)
}

/// `φ` on a generating set of `E`: one tuple of `c` polynomials per generator row.
pub fn phi_map(even: &BinaryCode, structure: &CycleStructure) -> Result<Vec<Vec<PElement>>> {
    even.generator()
        .rows()
        .iter()
        .map(|row| phi_vector(row, structure))
        .collect()
}

pub fn phi_vector(v: &BitVector, structure: &CycleStructure) -> Result<Vec<PElement>> {
    for (m, &x) in structure.fixed_points.iter().enumerate() {
        if v.get(x) {
            return Err(Error::OddRestriction {
                cycle: structure.c() + m,
            });
        }
    }
    structure
        .cycles
        .iter()
        .enumerate()
        .map(|(i, cycle)| {
            PElement::new(v.select(cycle)).map_err(|_| Error::OddRestriction { cycle: i })
        })
        .collect()
}

/// Outcome of the two-part self-duality test for a `σ`-invariant code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualReport {
    pub type_label: String,
    /// `ord_p(2) = p - 1`, so `P` is a field.
    pub field_mode: bool,
    /// `π(F)` is self-dual of length `c + f`.
    pub pi_self_dual: bool,
    /// `φ(E*)` is self-dual under `u·v = Σ u_i v_i(x^{-1})`.
    pub phi_self_dual: bool,
    /// In field mode: the `q`-power form agrees with the conjugation form on all generator pairs.
    pub q_form_agrees: Option<bool>,
    pub code_self_dual: bool,
}

impl SelfDualReport {
    pub fn both(&self) -> bool {
        self.pi_self_dual && self.phi_self_dual
    }
}

/// Checks `π(F)` self-duality and hermitian self-duality of `φ(E*)`.
///
/// The hermitian form uses the conjugation `x -> x^{-1}`. When `P` is a
/// field this is `v -> v^q` with `q = 2^{(p-1)/2}` (because `2^{(p-1)/2} ≡ -1
/// mod p`), and the report also evaluates the `q`-power form directly.
pub fn check_selfdual_conditions(code: &BinaryCode, sigma: &Permutation) -> Result<SelfDualReport> {
    let d = decompose(code, sigma)?;
    let s = &d.structure;
    if s.p < 3 {
        return Err(Error::InvalidArgument("needs an odd prime order".into()));
    }
    let pi = project_pi(&d.fixed, s)?;
    let pi_self_dual = pi.length() == s.c() + s.f() && pi.is_self_dual();

    let tuples = phi_map(&d.even, s)?;
    let half = (s.p - 1) * s.c() / 2;
    let mut orthogonal = true;
    for (i, u) in tuples.iter().enumerate() {
        for v in &tuples[i..] {
            if !conjugate_ip(u, v)?.is_zero() {
                orthogonal = false;
            }
        }
    }
    let phi_self_dual = orthogonal && d.even.dimension() == half;

    let field_mode = mult_order_of_2(s.p as u64)? == s.p as u64 - 1;
    let q_form_agrees = if field_mode && !tuples.is_empty() {
        let q = PField::new(s.p as u64)?.q();
        let mut agree = true;
        for u in &tuples {
            for v in &tuples {
                if hermitian_ip(u, v, &q)? != conjugate_ip(u, v)? {
                    agree = false;
                }
            }
        }
        Some(agree)
    } else {
        None
    };

    Ok(SelfDualReport {
        type_label: s.type_label(),
        field_mode,
        pi_self_dual,
        phi_self_dual,
        q_form_agrees,
        code_self_dual: code.is_self_dual(),
    })
}

/// Cycle/fixed block decomposition of a self-dual `π(F)`.
///
/// Coordinates `0..c` are the cycle orbits and `c..c+f` the fixed points.
#[derive(Clone, Debug)]
pub struct BalanceBlocks {
    pub c: usize,
    pub f: usize,
    /// `dim C_{π1}`: words supported on the cycle coordinates.
    pub k1: usize,
    /// `dim C_{π2}`: words supported on the fixed coordinates.
    pub k2: usize,
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub d: BitMatrix,
    pub e: BitMatrix,
    /// Codes generated by `A`, by `A` and `D`, by `B`, by `B` and `E`.
    pub code_a: BinaryCode,
    pub code_ad: BinaryCode,
    pub code_b: BinaryCode,
    pub code_be: BinaryCode,
}

impl BalanceBlocks {
    /// `k1 - c/2 = k2 - f/2`.
    pub fn balance_holds(&self) -> bool {
        2 * self.k1 + self.f == 2 * self.k2 + self.c
    }

    /// `rank D = rank E = (c+f)/2 - k1 - k2`.
    pub fn ranks_hold(&self) -> bool {
        let expected = (self.c + self.f) / 2 - self.k1 - self.k2;
        self.d.rank() == expected && self.e.rank() == expected
    }

    /// `𝒜⊥ = 𝒜_D` and `ℬ⊥ = ℬ_E`.
    pub fn duals_hold(&self) -> bool {
        self.code_a.dual() == self.code_ad && self.code_b.dual() == self.code_be
    }

    pub fn all_hold(&self) -> bool {
        self.balance_holds() && self.ranks_hold() && self.duals_hold()
    }
}

pub fn balance_blocks(pi_f: &BinaryCode, c: usize, f: usize) -> Result<BalanceBlocks> {
    if pi_f.length() != c + f {
        return Err(Error::DimensionMismatch(format!(
            "code length {} but c + f = {}",
            pi_f.length(),
            c + f
        )));
    }
    if !pi_f.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let cyc: Vec<usize> = (0..c).collect();
    let fix: Vec<usize> = (c..c + f).collect();
    let c1 = pi_f.subcode_killing(&fix);
    let c2 = pi_f.subcode_killing(&cyc);
    let mut span = c1.sum(&c2)?;
    let mut rest = Vec::new();
    for row in pi_f.generator().rows() {
        if !span.contains(row) {
            rest.push(row.clone());
            span = span.sum(&BinaryCode::from_rows(c + f, vec![row.clone()])?)?;
        }
    }
    let rest = BitMatrix::from_rows(c + f, rest)?;
    let a = c1.generator().select_columns(&cyc);
    let b = c2.generator().select_columns(&fix);
    let d = rest.select_columns(&cyc);
    let e = rest.select_columns(&fix);
    let stack = |x: &BitMatrix, y: &BitMatrix, len: usize| {
        let rows = x.rows().iter().chain(y.rows()).cloned().collect();
        BinaryCode::from_rows(len, rows).expect("shape")
    };
    Ok(BalanceBlocks {
        c,
        f,
        k1: c1.dimension(),
        k2: c2.dimension(),
        code_a: BinaryCode::from_generator(&a),
        code_ad: stack(&a, &d, c),
        code_b: BinaryCode::from_generator(&b),
        code_be: stack(&b, &e, f),
        a,
        b,
        d,
        e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityForm {
    /// Generator `(I_c | E')`.
    Present(BitMatrix),
    /// The block structure does not allow it; the reason names the block.
    Absent(String),
}

/// The `(I | E')` generator of `π(F)` when `c = f < d` forces `A = B = 0`.
pub fn has_identity_form(pi_f: &BinaryCode, c: usize, f: usize, d: usize) -> Result<IdentityForm> {
    if c != f || f >= d {
        return Err(Error::InvalidArgument(format!(
            "identity form needs c = f < d, got c={c} f={f} d={d}"
        )));
    }
    let blocks = balance_blocks(pi_f, c, f)?;
    if blocks.k2 > 0 {
        return Ok(IdentityForm::Absent(format!(
            "B ≠ 0: {} independent words live on the {f} fixed coordinates, \
             each expanding to weight at most {f} < {d}",
            blocks.k2
        )));
    }
    if blocks.k1 > 0 {
        return Ok(IdentityForm::Absent(format!(
            "A ≠ 0 with k1 = {} (balance forces k1 = k2 when c = f)",
            blocks.k1
        )));
    }
    let r = pi_f.generator().rref();
    debug_assert_eq!(r.pivots, (0..c).collect::<Vec<_>>());
    Ok(IdentityForm::Present(r.basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{extended_qr, BinaryCode};

    fn cyclic_shift_on_golay() -> (BinaryCode, Permutation) {
        let g = extended_qr(23).unwrap();
        let mut images: Vec<usize> = (0..23).map(|i| (i + 1) % 23).collect();
        images.push(23);
        (g, Permutation::new(images).unwrap())
    }

    #[test]
    fn identity_permutation_is_rejected() {
        assert!(matches!(
            cycle_structure(&Permutation::identity(4)),
            Err(Error::NotPrimeOrder(1))
        ));
        let six = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert!(matches!(cycle_structure(&six), Err(Error::NotPrimeOrder(6))));
    }

    #[test]
    fn golay_23_cycle() {
        let (g, sigma) = cyclic_shift_on_golay();
        assert!(is_automorphism(&g, &sigma));
        let s = cycle_structure(&sigma).unwrap();
        assert_eq!(s.type_label(), "23-(1;1)");
        let d = decompose(&g, &sigma).unwrap();
        assert_eq!(d.fixed.dimension(), 1);
        assert_eq!(d.even.dimension(), 11);
        assert!(d.is_direct_sum_of(&g));
        let pi = project_pi(&d.fixed, &s).unwrap();
        assert_eq!(pi, BinaryCode::from_rows(2, vec![BitVector::ones(2)]).unwrap());
    }

    #[test]
    fn order_59_on_120_points() {
        let cycles = vec![(0..59).collect(), (59..118).collect()];
        let sigma = Permutation::from_cycles(120, &cycles).unwrap();
        assert_eq!(cycle_structure(&sigma).unwrap().type_label(), "59-(2;2)");
    }

    #[test]
    fn non_automorphism_is_reported() {
        let g = extended_qr(23).unwrap();
        let swap = Permutation::from_cycles(24, &[vec![0, 1, 2]]).unwrap();
        let s = cycle_structure(&swap).unwrap();
        assert!(matches!(fixed_subcode(&g, &s), Err(Error::SigmaNotAutomorphism)));
    }

    #[test]
    fn permutation_text_round_trip() {
        let sigma = Permutation::from_cycles(7, &[vec![0, 2, 4], vec![1, 5, 6]]).unwrap();
        let cyc = sigma.to_string();
        assert_eq!(cyc, "(1 3 5)(2 6 7)");
        assert_eq!(Permutation::parse(&cyc, Some(7)).unwrap(), sigma);
        assert_eq!(Permutation::parse(&sigma.to_image_line(), None).unwrap(), sigma);
        assert!(Permutation::parse("1 1 2", None).is_err());
        assert!(Permutation::parse("0 1", None).is_err());
    }

    #[test]
    fn expansion_examples() {
        let rep = BinaryCode::from_rows(2, vec![BitVector::ones(2)]).unwrap();
        let e = expand_pi_inverse(&rep, &[0, 1], 23).unwrap();
        assert_eq!(e.length(), 46);
        assert_eq!(e.generator().row(0), &BitVector::ones(46));

        let v = BitVector::from_indices(32, [0, 1, 2, 22, 23, 24, 25, 26]);
        let cycles: Vec<usize> = (0..22).collect();
        let ev = expand_vector(&v, &cycles, 5).unwrap();
        assert_eq!(ev.weight(), 5 * 3 + 5);
        assert!(expand_vector(&v, &[0, 0], 5).is_err());
    }

    #[test]
    fn phi_reads_cycles_as_polynomials() {
        let s = CycleStructure::standard(59, 2, 2);
        let zero = phi_vector(&BitVector::zeros(120), &s).unwrap();
        assert!(zero.iter().all(PElement::is_zero));
        let v = BitVector::from_indices(120, [0, 1]);
        let t = phi_vector(&v, &s).unwrap();
        assert_eq!(t[0], PElement::from_exponents(59, &[0, 1]).unwrap());
        assert!(matches!(
            phi_vector(&BitVector::from_indices(120, [0]), &s),
            Err(Error::OddRestriction { cycle: 0 })
        ));
        assert!(matches!(
            phi_vector(&BitVector::from_indices(120, [118]), &s),
            Err(Error::OddRestriction { cycle: 2 })
        ));
    }

    #[test]
    fn golay_satisfies_both_conditions() {
        let (g, sigma) = cyclic_shift_on_golay();
        let r = check_selfdual_conditions(&g, &sigma).unwrap();
        assert!(r.pi_self_dual && r.phi_self_dual && r.code_self_dual);
        assert!(!r.field_mode);
    }

    #[test]
    fn four_two_two_blocks() {
        let c = BinaryCode::from_generator(&BitMatrix::from_strs(&["1010", "0101"]).unwrap());
        let b = balance_blocks(&c, 2, 2).unwrap();
        assert_eq!((b.k1, b.k2), (0, 0));
        assert_eq!(b.d.rank(), 2);
        assert!(b.all_hold());
        match has_identity_form(&c, 2, 2, 3).unwrap() {
            IdentityForm::Present(m) => {
                assert_eq!(m, BitMatrix::from_strs(&["1010", "0101"]).unwrap())
            }
            other => panic!("{other:?}"),
        }
        assert!(has_identity_form(&c, 2, 3, 5).is_err());
        assert!(has_identity_form(&c, 2, 2, 2).is_err());
    }

    #[test]
    fn fixed_point_words_block_identity_form() {
        let c = BinaryCode::from_generator(&BitMatrix::from_strs(&["1100", "0011"]).unwrap());
        assert!(matches!(
            has_identity_form(&c, 2, 2, 3).unwrap(),
            IdentityForm::Absent(_)
        ));
    }

    #[test]
    fn degenerate_split_without_fixed_points() {
        let g = extended_qr(23).unwrap();
        let b = balance_blocks(&g, 24, 0).unwrap();
        assert_eq!((b.k1, b.k2), (12, 0));
        assert!(b.all_hold());
    }
}
