//! Permutations, controlled gates, phase gates and the Schwinger pair.

use std::sync::Arc;

use crate::compose::compose;
use crate::constructors::{bool_game, bool_power, lollipop, point_game, power, qbit, unit_game};
use crate::copycat::{copycat, strategy_from_policy, Case};
use crate::error::{Error, Result};
use crate::game::{Game, Tag};
use crate::scalar::{self, half_one_plus_i, Scalar};
use crate::strategy::Morphism;
use crate::structural::{copair, dist_left, dist_left_inv, identity, injl, injr, tensor_morphisms, twist_oplus, twist_tensor};
use crate::unitary::is_unitary;

/// Address of the `i`-th factor of a right-nested tensor of `n` factors.
fn factor_path(i: usize, n: usize) -> Vec<Tag> {
    let mut p = vec![Tag::Right; i];
    if i + 1 < n {
        p.push(Tag::Left);
    }
    p
}

/// A bijection on `{0,1}ⁿ`; bit 1 is the most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPermutation {
    n: usize,
    table: Vec<usize>,
}

impl BitPermutation {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::InvalidArgument(format!("permutations on {n} bits are not supported (1 to 3)")));
        }
        let size = 1 << n;
        let mut seen = vec![false; size];
        if table.len() != size {
            return Err(Error::InvalidArgument(format!("table has {} entries, expected {size}", table.len())));
        }
        for &y in &table {
            if y >= size || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidArgument("table is not a bijection".into()));
            }
        }
        Ok(BitPermutation { n, table })
    }

    pub fn bits(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `q ∘ self`.
    pub fn then(&self, q: &BitPermutation) -> Result<BitPermutation> {
        BitPermutation::new(self.n, self.table.iter().map(|&x| q.table[x]).collect())
    }
}

struct BoolPorts {
    input_q: Vec<usize>,
    output_q: Vec<usize>,
    /// For every move, `(is_input, factor, value)` when it is an answer.
    answer: Vec<Option<(bool, usize, bool)>>,
    output_a: Vec<[usize; 2]>,
}

fn bool_ports(arena: &Game, n: usize) -> Result<BoolPorts> {
    let find = |side: Tag, i: usize, base: &str| {
        let mut p = vec![side];
        p.extend(factor_path(i, n));
        arena.find_move(&p, base).ok_or_else(|| Error::Internal(format!("no move {base} for factor {i}")))
    };
    let mut ports = BoolPorts {
        input_q: Vec::new(),
        output_q: Vec::new(),
        answer: vec![None; arena.moves().len()],
        output_a: Vec::new(),
    };
    for i in 0..n {
        ports.input_q.push(find(Tag::Left, i, "⊥")?);
        ports.output_q.push(find(Tag::Right, i, "⊥")?);
        let out = [find(Tag::Right, i, "ff")?, find(Tag::Right, i, "tt")?];
        ports.output_a.push(out);
        for (v, base) in [(false, "ff"), (true, "tt")] {
            ports.answer[find(Tag::Left, i, base)?] = Some((true, i, v));
            ports.answer[find(Tag::Right, i, base)?] = Some((false, i, v));
        }
    }
    Ok(ports)
}

/// The strategy on `Boolⁿ ⊸ Boolⁿ` realising `p`: at the first output
/// question P reads every input in order, then answers from the table; later
/// output questions are answered at once.
pub fn perm_strategy(p: &BitPermutation) -> Result<Morphism> {
    let n = p.bits();
    let b = Arc::new(bool_power(n)?);
    let arena = Arc::new(lollipop(&b, &b));
    let ports = bool_ports(&arena, n)?;
    let policy = |history: &[usize]| -> Result<usize> {
        let asked = history.iter().filter(|m| ports.input_q.contains(m)).count();
        let mut bits = vec![None; n];
        let mut answered = vec![false; n];
        for &m in history {
            match ports.answer[m] {
                Some((true, i, v)) => bits[i] = Some(v),
                Some((false, i, _)) => answered[i] = true,
                None => {}
            }
        }
        if asked < n {
            return Ok(ports.input_q[asked]);
        }
        let x = bits.iter().try_fold(0usize, |acc, b| b.map(|b| acc * 2 + b as usize));
        let Some(x) = x else {
            return Err(Error::Internal("input asked but not answered".into()));
        };
        let pending = (0..n)
            .find(|&i| history.contains(&ports.output_q[i]) && !answered[i])
            .ok_or_else(|| Error::Internal("no pending output question".into()))?;
        let bit = (p.apply(x) >> (n - 1 - pending)) & 1;
        Ok(ports.output_a[pending][bit])
    };
    let s = strategy_from_policy(arena, &policy)?;
    Morphism::from_strategy(b.clone(), b, s)
}

/// NOT on `Bool`.
pub fn bool_not() -> Result<Morphism> {
    perm_strategy(&BitPermutation::new(1, vec![1, 0])?)
}

/// NOT on `QBit`: the symmetry of `1 ⊕ 1`.
pub fn not_gate() -> Result<Morphism> {
    twist_oplus(&unit_game(), &unit_game())
}

/// `z·id + z̄·NOT` on `Bool`, `z = (1+i)/2`.
pub fn sqrt_not() -> Result<Morphism> {
    let z = half_one_plus_i();
    identity(&bool_game())?.scale(z).add(&bool_not()?.scale(z.conj()))
}

/// `z·id + z̄·twist` on `g ⊗ g`.
pub fn sqrt_twist(g: &Game) -> Result<Morphism> {
    let z = half_one_plus_i();
    let gg = power(g, 2)?;
    identity(&gg)?.scale(z).add(&twist_tensor(g, g)?.scale(z.conj()))
}

/// `id₁ ⊗ σ`, written on `1 ⊗ t`.
fn under_unit(s: &Morphism) -> Result<Morphism> {
    tensor_morphisms(&identity(&unit_game())?, s)
}

/// `dist ; [ (id₁⊗a) ; inl , (id₁⊗b) ; inr ] ; dist⁻¹` on `QBit ⊗ t`.
fn branchwise(t: &Game, a: &Morphism, b: &Morphism) -> Result<Morphism> {
    let u = unit_game();
    let ut = crate::constructors::tensor(&u, t);
    let left = compose(&under_unit(a)?, &injl(&ut, &ut)?)?;
    let right = compose(&under_unit(b)?, &injr(&ut, &ut)?)?;
    let mid = copair(&left, &right)?;
    compose(&compose(&dist_left(&u, &u, t)?, &mid)?, &dist_left_inv(&u, &u, t)?)
}

/// Controlled `σ` on `QBit ⊗ t`: identity when the control is `l`, `σ` when
/// it is `r`.
pub fn cntrl(s: &Morphism) -> Result<Morphism> {
    if s.source().as_ref() != s.target().as_ref() {
        return Err(Error::GameMismatch(format!("controlled gate needs an endomorphism, got {}", s.arena().shape())));
    }
    if !is_unitary(s)? {
        return Err(Error::NotReversible(format!("{} is not unitary", s.arena().shape())));
    }
    let t = s.source().as_ref().clone();
    branchwise(&t, &identity(&t)?, s)
}

/// `cntrl(cntrl(NOT))` on `QBit ⊗ (QBit ⊗ QBit)`.
pub fn toffoli() -> Result<Morphism> {
    cntrl(&cntrl(&not_gate()?)?)
}

/// `diag(1, θ, θ², …)` on `QBitᵐ`.
fn phase_ladder(m: usize, theta: Scalar) -> Result<Morphism> {
    let u = unit_game();
    if m == 1 {
        return copair(&injl(&u, &u)?, &injr(&u, &u)?.scale(theta));
    }
    let rest = phase_ladder(m - 1, theta)?;
    let t = power(&qbit(), m - 1)?;
    let step = theta.powu(1 << (m - 1));
    branchwise(&t, &rest, &rest.scale(step))
}

/// `diag(1, ω, …, ω^{2ⁿ−1})` on `QBitⁿ`, `ω = exp(2πi/2ⁿ)`.
pub fn bool_diag(n: usize) -> Result<Morphism> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!("diagonal gate on {n} qubits is not supported (1 to 3)")));
    }
    phase_ladder(n, scalar::root_of_unity(1 << n, 1))
}

/// `1 ⊸ N(n)` selecting point `k` (counted from 0).
pub fn point_injection(n: usize, k: usize) -> Result<Morphism> {
    if k >= n {
        return Err(Error::InvalidArgument(format!("point {k} out of range for N({n})")));
    }
    let u = unit_game();
    let target = point_game(n)?;
    let nodes: Vec<Vec<Tag>> = (0..n.saturating_sub(1).min(k + 1))
        .map(|j| vec![Tag::Right; j + 1])
        .collect();
    let choices: Vec<(&[Tag], Tag)> =
        nodes.iter().enumerate().map(|(j, p)| (p.as_slice(), if j < k { Tag::Right } else { Tag::Left })).collect();
    let arena = Arc::new(lollipop(&u, &target));
    let s = copycat(arena.clone(), &[Case::new(&choices, &[])])?;
    Morphism::from_strategy(Arc::new(u), Arc::new(target), s)
}

/// Copair of per-point morphisms `1 ⊸ N(n)`, right-nested.
fn copair_points(parts: Vec<Morphism>) -> Result<Morphism> {
    let mut it = parts.into_iter().rev();
    let mut acc = it.next().ok_or_else(|| Error::InvalidArgument("no points".into()))?;
    for m in it {
        acc = copair(&m, &acc)?;
    }
    Ok(acc)
}

/// Cyclic shift on `N(n)`: point `k` goes to point `k − 1 mod n`.
pub fn schwinger_shift(n: usize) -> Result<Morphism> {
    if n < 2 {
        return Err(Error::InvalidArgument("Schwinger pair needs n ≥ 2".into()));
    }
    copair_points((0..n).map(|k| point_injection(n, (k + n - 1) % n)).collect::<Result<_>>()?)
}

/// `diag(1, ω, …, ω^{n−1})` on `N(n)`, `ω = exp(2πi/n)`.
pub fn schwinger_clock(n: usize) -> Result<Morphism> {
    if n < 2 {
        return Err(Error::InvalidArgument("Schwinger pair needs n ≥ 2".into()));
    }
    copair_points(
        (0..n)
            .map(|k| Ok(point_injection(n, k)?.scale(scalar::root_of_unity(n as u32, k as i64))))
            .collect::<Result<_>>()?,
    )
}
