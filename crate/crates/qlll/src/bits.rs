//! Basis-index bookkeeping for qubit registers.
//!
//! Convention used throughout the crate: qubit 0 is the MOST significant bit
//! of a computational basis index. For an n-qubit register, basis state
//! `|b_0 b_1 ... b_{n-1}>` has index `sum_i b_i << (n-1-i)`.
//!
//! A [`QubitEmbedding`] fixes an ordered tuple of distinct qubit positions and
//! translates between (local index on the tuple, rest index on the remaining
//! qubits) pairs and global basis indices. Local indices follow the tuple
//! order (first tuple entry = most significant local bit); rest indices follow
//! ascending qubit order.

/// Index translation for an ordered tuple of qubits inside an n-qubit register.
#[derive(Debug, Clone)]
pub struct QubitEmbedding {
    n: usize,
    tuple: Vec<usize>,
    rest: Vec<usize>,
}

impl QubitEmbedding {
    /// Builds the embedding. Requires distinct, in-range qubit positions.
    pub fn new(n: usize, tuple: &[usize]) -> Option<Self> {
        if n == 0 || n >= usize::BITS as usize {
            return None;
        }
        let mut seen = vec![false; n];
        for &q in tuple {
            if q >= n || seen[q] {
                return None;
            }
            seen[q] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&q| !seen[q]).collect();
        Some(Self {
            n,
            tuple: tuple.to_vec(),
            rest,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn tuple_len(&self) -> usize {
        self.tuple.len()
    }

    pub fn rest_len(&self) -> usize {
        self.rest.len()
    }

    /// Number of local basis states, `2^tuple_len`.
    pub fn local_states(&self) -> usize {
        1 << self.tuple.len()
    }

    /// Number of rest basis states, `2^rest_len`.
    pub fn rest_states(&self) -> usize {
        1 << self.rest.len()
    }

    /// Qubits not in the tuple, ascending.
    pub fn rest_qubits(&self) -> &[usize] {
        &self.rest
    }

    /// Scatters a local index onto the tuple's bit positions.
    pub fn scatter_local(&self, local: usize) -> usize {
        let k = self.tuple.len();
        let mut g = 0usize;
        for (i, &q) in self.tuple.iter().enumerate() {
            let bit = (local >> (k - 1 - i)) & 1;
            g |= bit << (self.n - 1 - q);
        }
        g
    }

    /// Scatters a rest index onto the remaining bit positions.
    pub fn scatter_rest(&self, rest: usize) -> usize {
        let r = self.rest.len();
        let mut g = 0usize;
        for (j, &q) in self.rest.iter().enumerate() {
            let bit = (rest >> (r - 1 - j)) & 1;
            g |= bit << (self.n - 1 - q);
        }
        g
    }

    /// Global index of (local, rest).
    pub fn global(&self, local: usize, rest: usize) -> usize {
        self.scatter_local(local) | self.scatter_rest(rest)
    }

    /// Extracts the local index from a global basis index.
    pub fn gather_local(&self, global: usize) -> usize {
        let k = self.tuple.len();
        let mut l = 0usize;
        for (i, &q) in self.tuple.iter().enumerate() {
            let bit = (global >> (self.n - 1 - q)) & 1;
            l |= bit << (k - 1 - i);
        }
        l
    }

    /// Extracts the rest index from a global basis index.
    pub fn gather_rest(&self, global: usize) -> usize {
        let r = self.rest.len();
        let mut t = 0usize;
        for (j, &q) in self.rest.iter().enumerate() {
            let bit = (global >> (self.n - 1 - q)) & 1;
            t |= bit << (r - 1 - j);
        }
        t
    }
}

/// Permutes the amplitude vector of a local state under a qubit reordering.
///
/// `perm[i]` is the position, in the OLD tuple, of the qubit that the NEW
/// tuple places at position `i`. The returned vector satisfies
/// `out[new_index] = amps[old_index]` where bit `i` (MSB-first) of `new_index`
/// equals bit `perm[i]` of `old_index`.
pub fn permute_local_amps<T: Copy>(amps: &[T], perm: &[usize]) -> Vec<T> {
    let k = perm.len();
    assert_eq!(amps.len(), 1 << k, "amplitude count must be 2^k");
    let mut out = Vec::with_capacity(amps.len());
    for new_idx in 0..amps.len() {
        let mut old_idx = 0usize;
        for (i, &p) in perm.iter().enumerate() {
            let bit = (new_idx >> (k - 1 - i)) & 1;
            old_idx |= bit << (k - 1 - p);
        }
        out.push(amps[old_idx]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_convention() {
        // 3 qubits, tuple (0,): qubit 0 is the most significant bit.
        let e = QubitEmbedding::new(3, &[0]).unwrap();
        assert_eq!(e.scatter_local(1), 0b100);
        assert_eq!(e.scatter_rest(0b01), 0b001);
        assert_eq!(e.global(1, 0b11), 0b111);
    }

    #[test]
    fn tuple_order_is_significant() {
        let fwd = QubitEmbedding::new(4, &[1, 3]).unwrap();
        let rev = QubitEmbedding::new(4, &[3, 1]).unwrap();
        // local index 0b10 means: first tuple qubit set, second clear.
        assert_eq!(fwd.scatter_local(0b10), 0b0100);
        assert_eq!(rev.scatter_local(0b10), 0b0001);
    }

    #[test]
    fn gather_inverts_scatter() {
        let e = QubitEmbedding::new(5, &[4, 1]).unwrap();
        for local in 0..e.local_states() {
            for rest in 0..e.rest_states() {
                let g = e.global(local, rest);
                assert_eq!(e.gather_local(g), local);
                assert_eq!(e.gather_rest(g), rest);
            }
        }
    }

    #[test]
    fn every_global_index_is_covered() {
        let e = QubitEmbedding::new(4, &[2, 0]).unwrap();
        let mut seen = vec![false; 16];
        for local in 0..4 {
            for rest in 0..4 {
                let g = e.global(local, rest);
                assert!(!seen[g]);
                seen[g] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn permute_identity_and_swap() {
        let amps: Vec<u32> = (0..8).collect();
        assert_eq!(permute_local_amps(&amps, &[0, 1, 2]), amps);
        // Swap the first two qubits of three: new bit0 = old bit1.
        let swapped = permute_local_amps(&amps, &[1, 0, 2]);
        // |b0 b1 b2> -> amplitude of |b1 b0 b2>: index 0b100 picks old 0b010.
        assert_eq!(swapped[0b100], 0b010);
        assert_eq!(swapped[0b010], 0b100);
        assert_eq!(swapped[0b110], 0b110);
    }

    #[test]
    fn rejects_bad_tuples() {
        assert!(QubitEmbedding::new(3, &[3]).is_none());
        assert!(QubitEmbedding::new(3, &[1, 1]).is_none());
    }
}
