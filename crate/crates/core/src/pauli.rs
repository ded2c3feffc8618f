//! Pauli strings over the whole chain.
//!
//! Site 1 is the leftmost Kronecker factor, i.e. the most significant bit of a
//! computational-basis index.

use std::fmt;

use num_complex::Complex64;

/// Single-site Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// 2x2 matrix in row-major order.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    /// Whether the operator flips the computational basis state.
    pub fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Whether it commutes with Z on the same site.
    pub fn commutes_with_z(self) -> bool {
        matches!(self, Pauli::I | Pauli::Z)
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Tensor product of one Pauli per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    codes: Vec<Pauli>,
}

impl PauliString {
    pub fn new(codes: Vec<Pauli>) -> Self {
        PauliString { codes }
    }

    /// `ops` given as (1-based site, operator); remaining sites are identity.
    pub fn from_sites(n_qubits: usize, ops: &[(usize, Pauli)]) -> Self {
        let mut codes = vec![Pauli::I; n_qubits];
        for &(site, op) in ops {
            codes[site - 1] = op;
        }
        PauliString { codes }
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            codes: vec![Pauli::I; n_qubits],
        }
    }

    pub fn codes(&self) -> &[Pauli] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Operator on a 1-based site.
    pub fn site(&self, k: usize) -> Pauli {
        self.codes[k - 1]
    }

    /// Parses strings such as `"XXZI"`.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                'I' => Some(Pauli::I),
                'X' => Some(Pauli::X),
                'Y' => Some(Pauli::Y),
                'Z' => Some(Pauli::Z),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(PauliString::new)
    }
}

impl fmt::Display for PauliString {
    /// Compact form with identities suppressed, e.g. `X1 X2 Z3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .codes
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(i, p)| format!("{p}{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
