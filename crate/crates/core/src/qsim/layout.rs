//! Qudit index bookkeeping for the encoding and syndrome circuits.
//!
//! Positions are 1-based. The X-ancilla set T_X = {n-b1-δ+3, ..., n-b1+1}
//! and the Z-ancilla set T_Z = {b2+1, ..., b2+δ-1} are reduced mod n into
//! 1..n; the remaining positions D_M hold the message qudits.

use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone)]
pub struct CircuitLayout {
    pub n: usize,
    pub b1: usize,
    pub b2: usize,
    pub delta: usize,
    /// X-ancilla positions, ascending.
    pub t_x: Vec<usize>,
    /// Z-ancilla positions, ascending.
    pub t_z: Vec<usize>,
    /// Message positions, ascending.
    pub d_m: Vec<usize>,
    /// Position carrying the j-th component of s_X (j = 1..δ-1): the
    /// Z-ancilla at b2 + j.
    pub sx_position: Vec<usize>,
    /// Position carrying the j-th component of s_Z: the X-ancilla at
    /// n - b1 - j + 2.
    pub sz_position: Vec<usize>,
}

fn wrap(v: i64, n: usize) -> usize {
    (v - 1).rem_euclid(n as i64) as usize + 1
}

impl CircuitLayout {
    pub fn new(n: usize, b1: usize, b2: usize, delta: usize) -> Result<CircuitLayout> {
        if delta == 0 || n == 0 {
            return Err(Error::MessageSpaceEmpty);
        }
        if 2 * (delta - 1) > n {
            return Err(Error::MessageSpaceEmpty);
        }
        let sx_position: Vec<usize> = (1..delta).map(|j| wrap((b2 + j) as i64, n)).collect();
        let sz_position: Vec<usize> = (1..delta)
            .map(|j| wrap(n as i64 - b1 as i64 - j as i64 + 2, n))
            .collect();
        let mut t_z = sx_position.clone();
        t_z.sort_unstable();
        let mut t_x = sz_position.clone();
        t_x.sort_unstable();
        if t_z.windows(2).any(|w| w[0] == w[1]) || t_x.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OverlappingAncillaSets);
        }
        if t_x.iter().any(|p| t_z.contains(p)) {
            return Err(Error::OverlappingAncillaSets);
        }
        let d_m: Vec<usize> = (1..=n)
            .filter(|p| !t_x.contains(p) && !t_z.contains(p))
            .collect();
        Ok(CircuitLayout {
            n,
            b1,
            b2,
            delta,
            t_x,
            t_z,
            d_m,
            sx_position,
            sz_position,
        })
    }

    /// Number of message qudits n - 2(δ-1).
    pub fn n_m(&self) -> usize {
        self.d_m.len()
    }

    /// δ-1 ancillas on each of the X and Z sides.
    pub fn n_x(&self) -> usize {
        self.t_x.len()
    }

    pub fn n_z(&self) -> usize {
        self.t_z.len()
    }

    /// Syndrome register width 2(δ-1).
    pub fn n_s(&self) -> usize {
        self.t_x.len() + self.t_z.len()
    }
}
