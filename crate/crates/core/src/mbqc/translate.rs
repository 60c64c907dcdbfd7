//! Circuit to ZX translation.
//!
//! `|0>` is a one-leg X(0) spider, `|+>` a one-leg Z(0) spider, `H` a
//! Hadamard edge, `X` an X(pi) spider and CNOT a Z(0) on the control joined
//! by a plain edge to an X(0) on the target.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Init, Op};
use crate::error::Result;
use crate::zx::{VertexId, ZxDiagram};

struct Wire {
    last: VertexId,
    pending_h: bool,
}

impl Wire {
    fn extend(&mut self, d: &mut ZxDiagram, v: VertexId) {
        d.add_edge(self.last, v, self.pending_h);
        self.last = v;
        self.pending_h = false;
    }
}

fn translate(d: &mut ZxDiagram, mut wires: Vec<Wire>, ops: &[Op]) -> Result<()> {
    for op in ops {
        match *op {
            Op::H { qubit } => wires[qubit - 1].pending_h ^= true,
            Op::X { qubit } => {
                let x = d.add_x(PI);
                wires[qubit - 1].extend(d, x);
            }
            Op::Cnot { control, target } => {
                let c = d.add_z(0.0);
                let t = d.add_x(0.0);
                wires[control - 1].extend(d, c);
                wires[target - 1].extend(d, t);
                d.add_edge(c, t, false);
            }
        }
    }
    for mut w in wires {
        let o = d.add_output();
        w.extend(d, o);
    }
    Ok(())
}

/// The circuit as a state: initial states are one-leg spiders, one output
/// per qubit in order.
pub fn circuit_to_zx(c: &Circuit) -> Result<ZxDiagram> {
    c.validate()?;
    let mut d = ZxDiagram::new();
    let wires = c
        .initial
        .iter()
        .map(|init| {
            let v = match init {
                Init::Zero => d.add_x(0.0),
                Init::Plus => d.add_z(0.0),
            };
            Wire {
                last: v,
                pending_h: false,
            }
        })
        .collect();
    translate(&mut d, wires, &c.ops)?;
    Ok(d)
}

/// The op list as an operator on `q` qubits, with `q` inputs and `q` outputs.
pub fn ops_to_zx(q: usize, ops: &[Op]) -> Result<ZxDiagram> {
    Circuit {
        q,
        initial: vec![Init::Zero; q],
        ops: ops.to_vec(),
    }
    .validate()?;
    let mut d = ZxDiagram::new();
    let wires = (0..q)
        .map(|_| Wire {
            last: d.add_input(),
            pending_h: false,
        })
        .collect();
    translate(&mut d, wires, ops)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::FunctionTable;
    use crate::circuit::run_state;
    use crate::oracle::synthesize_oracle;
    use crate::zx::{eval_tensor, proportional, Tensor};
    use num_complex::Complex64 as C64;

    fn permutation(q: usize, f: impl Fn(usize) -> usize) -> Tensor {
        Tensor::from_operator(q, q, |o, i| C64::new((o == f(i)) as u8 as f64, 0.0))
    }

    #[test]
    fn cnot_and_x() {
        let d = ops_to_zx(
            2,
            &[Op::Cnot {
                control: 1,
                target: 2,
            }],
        )
        .unwrap();
        let cnot = permutation(2, |i| if i & 2 != 0 { i ^ 1 } else { i });
        assert!(proportional(&eval_tensor(&d).unwrap(), &cnot, 1e-12));

        let d = ops_to_zx(
            2,
            &[Op::Cnot {
                control: 2,
                target: 1,
            }],
        )
        .unwrap();
        let reversed = permutation(2, |i| if i & 1 != 0 { i ^ 2 } else { i });
        assert!(proportional(&eval_tensor(&d).unwrap(), &reversed, 1e-12));

        let d = ops_to_zx(1, &[Op::X { qubit: 1 }]).unwrap();
        assert!(proportional(
            &eval_tensor(&d).unwrap(),
            &permutation(1, |i| i ^ 1),
            1e-12
        ));
    }

    #[test]
    fn hadamards_compose() {
        let d = ops_to_zx(1, &[Op::H { qubit: 1 }, Op::H { qubit: 1 }]).unwrap();
        assert!(proportional(
            &eval_tensor(&d).unwrap(),
            &permutation(1, |i| i),
            1e-12
        ));
        let d = ops_to_zx(1, &[Op::H { qubit: 1 }]).unwrap();
        let h = Tensor::from_operator(1, 1, |o, i| {
            C64::new(if o & i == 1 { -1.0 } else { 1.0 }, 0.0)
        });
        assert!(proportional(&eval_tensor(&d).unwrap(), &h, 1e-12));
    }

    #[test]
    fn simon_circuit_matches_statevector() {
        let f = FunctionTable::from_strs(2, &["10", "11", "11", "10"]).unwrap();
        let c = Circuit::simon(&synthesize_oracle(&f).unwrap()).with_working_hadamards(2);
        let psi = run_state(&c).unwrap();
        let sv = Tensor::new(4, psi.into_amplitudes()).unwrap();
        assert!(proportional(
            &eval_tensor(&circuit_to_zx(&c).unwrap()).unwrap(),
            &sv,
            1e-12
        ));
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(ops_to_zx(1, &[Op::X { qubit: 2 }]).is_err());
    }
}
