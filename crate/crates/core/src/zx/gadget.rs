//! The adaptive CNOT gadget: a phase-0 Z hub, Hadamard-linked to a spider
//! on each of two lines, with a terminal effect plugged into the hub. A
//! `pi/2` Z effect turns the gadget into a CZ (a CNOT in the Hadamard frame of
//! the lower line) up to `-pi/2` corrections on both lines; a phase-0 X effect
//! disconnects the lines.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::diagram::{VertexId, ZxDiagram};
use super::tensor::{eval_tensor, proportionality_residual, Tensor};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetSetting {
    CnotOn,
    CnotOff,
}

/// Two lines `in -> site -> out`, returning `(diagram, top site, bottom site)`.
fn two_lines() -> (ZxDiagram, VertexId, VertexId) {
    let mut d = ZxDiagram::new();
    let (i1, i2) = (d.add_input(), d.add_input());
    let (o1, o2) = (d.add_output(), d.add_output());
    let top = d.add_z(0.0);
    let bottom = d.add_z(0.0);
    d.add_edge(i1, top, false);
    d.add_edge(top, o1, false);
    d.add_edge(i2, bottom, false);
    d.add_edge(bottom, o2, false);
    (d, top, bottom)
}

/// The gadget with its terminal effect chosen by `setting`.
pub fn adaptive_gadget(setting: GadgetSetting) -> ZxDiagram {
    let (mut d, top, bottom) = two_lines();
    let hub = d.add_z(0.0);
    d.add_edge(top, hub, true);
    d.add_edge(hub, bottom, true);
    let effect = match setting {
        GadgetSetting::CnotOn => d.add_z(FRAC_PI_2),
        GadgetSetting::CnotOff => d.add_x(0.0),
    };
    d.add_edge(hub, effect, false);
    d
}

/// The sequence of equal diagrams the gadget rewrites through, ending in the
/// simplest form.
pub fn gadget_rewrites(setting: GadgetSetting) -> Vec<ZxDiagram> {
    match setting {
        GadgetSetting::CnotOn => {
            // hub fused with the effect
            let (mut fused, top, bottom) = two_lines();
            let hub = fused.add_z(FRAC_PI_2);
            fused.add_edge(top, hub, true);
            fused.add_edge(hub, bottom, true);

            // a single Hadamard edge with -pi/2 on both line spiders
            let (mut cz, top, bottom) = two_lines();
            cz.set_phase(top, -FRAC_PI_2).expect("exists");
            cz.set_phase(bottom, -FRAC_PI_2).expect("exists");
            cz.add_edge(top, bottom, true);

            // the corrections pulled out after the CZ
            let (mut split, top, bottom) = two_lines();
            split.add_edge(top, bottom, true);
            corrections_after(&mut split, top, bottom);

            // the lower line in its Hadamard frame: a CNOT
            let mut cnot = ZxDiagram::new();
            let (i1, i2) = (cnot.add_input(), cnot.add_input());
            let (o1, o2) = (cnot.add_output(), cnot.add_output());
            let c = cnot.add_z(0.0);
            let t = cnot.add_x(0.0);
            let (s1, s2) = (cnot.add_z(-FRAC_PI_2), cnot.add_z(-FRAC_PI_2));
            cnot.add_edge(i1, c, false);
            cnot.add_edge(c, s1, false);
            cnot.add_edge(s1, o1, false);
            cnot.add_edge(i2, t, true);
            cnot.add_edge(t, s2, true);
            cnot.add_edge(s2, o2, false);
            cnot.add_edge(c, t, false);

            vec![fused, cz, split, cnot]
        }
        GadgetSetting::CnotOff => {
            // the X effect copied through the hub onto both Hadamard legs
            let (mut copied, top, bottom) = two_lines();
            let (x1, x2) = (copied.add_x(0.0), copied.add_x(0.0));
            copied.add_edge(top, x1, true);
            copied.add_edge(x2, bottom, true);

            // the same states colour-changed to Z effects on plain legs
            let (mut recoloured, top, bottom) = two_lines();
            let (z1, z2) = (recoloured.add_z(0.0), recoloured.add_z(0.0));
            recoloured.add_edge(top, z1, false);
            recoloured.add_edge(z2, bottom, false);

            let (wires, _, _) = two_lines();
            vec![copied, recoloured, wires]
        }
    }
}

fn corrections_after(d: &mut ZxDiagram, top: VertexId, bottom: VertexId) {
    // reroute each output through a -pi/2 spider
    let outs = d.outputs().to_vec();
    for (site, out) in [(top, outs[0]), (bottom, outs[1])] {
        let idx = d.find_edge(site, out, Some(false)).expect("line edge");
        d.remove_edge(idx);
        let s = d.add_z(-FRAC_PI_2);
        d.add_edge(site, s, false);
        d.add_edge(s, out, false);
    }
}

/// Exact operator the gadget should equal: `(S^dag x S^dag) CZ` when on, the
/// two-qubit identity when off.
pub fn gadget_target(setting: GadgetSetting) -> Tensor {
    Tensor::from_operator(2, 2, |o, i| {
        if o != i {
            return C64::new(0.0, 0.0);
        }
        match setting {
            GadgetSetting::CnotOff => C64::new(1.0, 0.0),
            GadgetSetting::CnotOn => {
                let cz = if i == 3 { -1.0 } else { 1.0 };
                let sdag = C64::from_polar(1.0, -FRAC_PI_2 * i.count_ones() as f64);
                sdag * cz
            }
        }
    })
}

/// Largest proportionality residual between the gadget, every diagram in its
/// rewrite chain, and the exact target operator. `INFINITY` when some pair
/// is not proportional at all.
pub fn adaptive_cnot_residual(setting: GadgetSetting) -> Result<f64> {
    let lhs = eval_tensor(&adaptive_gadget(setting))?;
    let mut worst =
        proportionality_residual(&lhs, &gadget_target(setting)).unwrap_or(f64::INFINITY);
    for d in gadget_rewrites(setting) {
        let t = eval_tensor(&d)?;
        worst = worst.max(proportionality_residual(&lhs, &t).unwrap_or(f64::INFINITY));
    }
    Ok(worst)
}

pub fn verify_adaptive_cnot(setting: GadgetSetting, tol: f64) -> bool {
    adaptive_cnot_residual(setting).is_ok_and(|r| r < tol)
}

/// `X(pi)` on a wire, which should equal Pauli X.
pub fn translation_x() -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let i = d.add_input();
    let x = d.add_x(PI);
    let o = d.add_output();
    d.add_edge(i, x, false);
    d.add_edge(x, o, false);
    d
}
