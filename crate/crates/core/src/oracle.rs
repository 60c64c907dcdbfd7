//! Oracle synthesis: factorizing a characteristic into CNOT/X gates.
//!
//! Every gate in `{CNOT(j,k), X(k)}` has its first set bit at a distinct
//! position (its *leader*): `X(k)` leads at `k-1` in block 0 and `CNOT(j,k)`
//! leads at offset `k-1` of block `2^(n-j)`, the input with only bit `j` set.
//! A gate never touches positions left of its leader, so a single left-to-right
//! scan that cancels each set bit with the gate leading there either clears the
//! string or stops at a set bit no gate can reach. The latter happens exactly
//! when the function is not affine over GF(2).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::binary::{
    characteristic_of_function, characteristic_of_gate, BitString, Characteristic, FunctionTable,
    Gate,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateList {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl GateList {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Image of `input` under the network acting on a zeroed auxiliary
    /// register.
    pub fn eval(&self, input: &BitString) -> BitString {
        let mut aux = BitString::zeros(self.n);
        for g in &self.gates {
            g.apply_classical(input, &mut aux);
        }
        aux
    }

    pub fn to_function(&self) -> FunctionTable {
        FunctionTable::from_fn(self.n, |t| self.eval(t)).expect("n checked at construction")
    }

    pub fn characteristic(&self) -> Characteristic {
        self.gates
            .iter()
            .fold(Characteristic::zero(self.n), |acc, g| {
                acc.xor(&characteristic_of_gate(*g, self.n).expect("validated"))
                    .expect("equal widths")
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    Realizable(GateList),
    /// Working string at the first set bit that no gate leads.
    Unrealizable {
        residual: Characteristic,
    },
}

/// Leader position of every gate in `{CNOT(j,k), X(k)}`.
pub fn leader_table(n: usize) -> BTreeMap<usize, Gate> {
    let mut table = BTreeMap::new();
    for gate in Gate::all(n) {
        let c = characteristic_of_gate(gate, n).expect("indices in range");
        let lead = c
            .bits()
            .first_one()
            .expect("gate characteristics are nonzero");
        let clash = table.insert(lead, gate);
        assert!(
            clash.is_none(),
            "leaders must be distinct, {gate} collides at {lead}"
        );
    }
    table
}

pub fn factorize(c: &Characteristic) -> Factorization {
    let n = c.n();
    let leaders = leader_table(n);
    let mut work = c.clone();
    let mut gates = Vec::new();
    while let Some(pos) = work.bits().first_one() {
        let Some(&gate) = leaders.get(&pos) else {
            return Factorization::Unrealizable { residual: work };
        };
        work.xor_assign(&characteristic_of_gate(gate, n).expect("in range"))
            .expect("same n");
        gates.push(gate);
    }
    Factorization::Realizable(GateList { n, gates })
}

pub fn synthesize_oracle(f: &FunctionTable) -> Result<GateList> {
    match factorize(&characteristic_of_function(f)) {
        Factorization::Realizable(gates) => Ok(gates),
        Factorization::Unrealizable { residual } => Err(Error::Unrealizable {
            residual: residual.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn chr(n: usize, s: &str) -> Characteristic {
        Characteristic::new(n, s.parse().unwrap()).unwrap()
    }

    #[test]
    fn leader_tables() {
        let t2 = leader_table(2);
        let expected = [
            (0, Gate::x(1)),
            (1, Gate::x(2)),
            (2, Gate::cnot(2, 1)),
            (3, Gate::cnot(2, 2)),
            (4, Gate::cnot(1, 1)),
            (5, Gate::cnot(1, 2)),
        ];
        assert_eq!(t2.into_iter().collect::<Vec<_>>(), expected);
        let t1 = leader_table(1);
        assert_eq!(
            t1.into_iter().collect::<Vec<_>>(),
            vec![(0, Gate::x(1)), (1, Gate::cnot(1, 1))]
        );
        for n in 1..=5 {
            let t = leader_table(n);
            assert_eq!(t.len(), n * n + n);
            for (pos, g) in t {
                let closed_form = match g {
                    Gate::X { target } => target - 1,
                    Gate::Cnot { control, target } => (1 << (n - control)) * n + target - 1,
                };
                assert_eq!(pos, closed_form);
            }
        }
    }

    #[test]
    fn worked_factorization() {
        let Factorization::Realizable(list) = factorize(&chr(2, "10111110")) else {
            panic!("should factorize")
        };
        assert_eq!(
            list.gates,
            vec![Gate::x(1), Gate::cnot(2, 2), Gate::cnot(1, 2)]
        );
        assert_eq!(list.characteristic(), chr(2, "10111110"));
    }

    #[test]
    fn zero_characteristic_is_empty() {
        assert_eq!(
            factorize(&chr(2, "00000000")),
            Factorization::Realizable(GateList {
                n: 2,
                gates: vec![]
            })
        );
    }

    #[test]
    fn non_affine_periodic_function_is_unrealizable() {
        let f =
            FunctionTable::from_strs(3, &["000", "000", "001", "001", "010", "010", "100", "100"])
                .unwrap();
        // f(110) != f(100) ^ f(010) ^ f(000)
        assert_ne!(
            f.eval_index(6),
            &f.eval_index(4).xor(f.eval_index(2)).unwrap()
        );
        assert_eq!(
            crate::binary::find_period(&f).period.unwrap().to_string(),
            "001"
        );
        let Factorization::Unrealizable { residual } = factorize(&characteristic_of_function(&f))
        else {
            panic!("must be unrealizable")
        };
        assert!(!residual.is_zero());
        assert!(matches!(
            synthesize_oracle(&f),
            Err(Error::Unrealizable { .. })
        ));
    }

    #[test]
    fn synthesis_examples() {
        let f = FunctionTable::from_strs(2, &["10", "11", "11", "10"]).unwrap();
        assert_eq!(
            synthesize_oracle(&f).unwrap().gates,
            vec![Gate::x(1), Gate::cnot(2, 2), Gate::cnot(1, 2)]
        );
        // C_id = 00011011, scanned as CNOT22 (leader 3) then CNOT11 (leader 4)
        let id = synthesize_oracle(&FunctionTable::identity(2)).unwrap();
        assert_eq!(id.gates, vec![Gate::cnot(2, 2), Gate::cnot(1, 1)]);
        let constant = FunctionTable::from_strs(2, &["11", "11", "11", "11"]).unwrap();
        assert_eq!(
            synthesize_oracle(&constant).unwrap().gates,
            vec![Gate::x(1), Gate::x(2)]
        );
    }

    #[test]
    fn full_gate_set_is_needed_for_some_periodic_function() {
        // A = [[1,1],[1,1]], c = 11: two-to-one with s = 11, needs all six gates
        let f = FunctionTable::from_strs(2, &["11", "00", "00", "11"]).unwrap();
        let list = synthesize_oracle(&f).unwrap();
        assert_eq!(list.len(), 6);
        assert_eq!(list.gates.iter().collect::<BTreeSet<_>>().len(), 6);
    }

    #[test]
    fn exhaustive_round_trip_n2() {
        for code in 0..256usize {
            let outs: Vec<BitString> = (0..4)
                .map(|t| BitString::from_value(code >> (2 * t), 2))
                .collect();
            let f = FunctionTable::new(2, outs).unwrap();
            match synthesize_oracle(&f) {
                Ok(list) => {
                    assert!(f.is_affine());
                    assert_eq!(list.to_function(), f);
                    assert_eq!(list.characteristic(), characteristic_of_function(&f));
                    let distinct: BTreeSet<_> = list.gates.iter().collect();
                    assert_eq!(distinct.len(), list.len());
                    let mut reversed = list.clone();
                    reversed.gates.reverse();
                    assert_eq!(reversed.to_function(), f);
                }
                Err(_) => assert!(!f.is_affine()),
            }
        }
    }
}
