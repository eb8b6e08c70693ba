//! Covariant derivatives in the frame basis.
//!
//! Frame tensors reuse [`Tensor`] as storage, with slot values read as frame
//! indices. Since every `θ^A` commutes with the algebra, a coefficient can
//! be moved freely between slots.

use super::frame::Frame;
use crate::ncalg::{Algebra, Element};
use crate::omega::{Calculus, Metric, Sigma, SigmaChoice, Tensor, TensorBi, TensorTri};
use crate::qscalar::Scalar;
use crate::rmat::Mat;

/// A generalized flip together with the Dirac operator defining `D` or `D̄`.
#[derive(Debug, Clone)]
pub struct Connection {
    pub s: SigmaChoice,
    pub sbar: SigmaChoice,
    pub calculus: Calculus,
    pub barred: bool,
    pub sigma: Sigma,
    pub dirac: [Element; 6],
}

impl Connection {
    /// `D` (if `barred` is false) or `D̄`, with flips `S` on unbarred and
    /// `S̄` on barred pairs.
    pub fn new(frame: &Frame, s: SigmaChoice, sbar: SigmaChoice, calculus: Calculus, barred: bool) -> Self {
        Connection { s, sbar, calculus, barred, sigma: Sigma::new(s, sbar), dirac: frame.dirac(barred) }
    }

    /// Single-calculus connection: `D` with `S` or `D̄` with `S̄ = S`.
    pub fn single(frame: &Frame, s: SigmaChoice, barred: bool) -> Self {
        let calc = if barred { Calculus::Barred } else { Calculus::Unbarred };
        Connection::new(frame, s, s, calc, barred)
    }

    pub fn label(&self) -> String {
        let d = if self.barred { "Dbar" } else { "D" };
        match self.calculus {
            Calculus::Enlarged => format!("{d}[S={},Sbar={}]", self.s, self.sbar),
            _ => format!("{d}[{}]", if self.barred { self.sbar } else { self.s }),
        }
    }

    /// Frame components of the differential of a function: `-[θ_D, f]`.
    pub fn d_function(&self, alg: &Algebra, f: &Element) -> [Element; 6] {
        std::array::from_fn(|c| {
            let t = &self.dirac[c];
            if t.is_zero() {
                Element::zero()
            } else {
                -&alg.commutator(t, f)
            }
        })
    }

    /// `D θ^A = -θ_D ⊗ θ^A + σ(θ^A ⊗ θ_D)`.
    pub fn d_frame(&self, a: u8) -> TensorBi {
        let mut out = TensorBi::zero();
        for (c, t) in self.dirac.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            out.add([c as u8, a], &-t);
            for (k, d) in self.sigma.on_pair(a, c as u8) {
                out.add(d, &t.scale(&k));
            }
        }
        out
    }

    /// `D(Σ c_A θ^A) = Σ dc_A ⊗ θ^A + c_A Dθ^A`.
    pub fn d_one(&self, alg: &Algebra, c: &[Element; 6]) -> TensorBi {
        let mut out = TensorBi::zero();
        for (a, f) in c.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (b, g) in self.d_function(alg, f).iter().enumerate() {
                out.add([b as u8, a as u8], g);
            }
            for (s, t) in self.d_frame(a as u8).terms() {
                out.add(*s, &alg.mul(f, t));
            }
        }
        out
    }

    /// `D_2(ω ⊗ ω') = Dω ⊗ ω' + σ_12(ω ⊗ Dω')`.
    pub fn d_two(&self, alg: &Algebra, t: &TensorBi) -> TensorTri {
        let mut out = TensorTri::zero();
        for (s, f) in t.terms() {
            let mut c: [Element; 6] = Default::default();
            c[s[0] as usize] = f.clone();
            for (u, g) in self.d_one(alg, &c).terms() {
                out.add([u[0], u[1], s[1]], g);
            }
            let mut inner = TensorTri::zero();
            for (u, g) in self.d_frame(s[1]).terms() {
                inner.add([s[0], u[0], u[1]], &alg.mul(f, g));
            }
            out = &out + &self.sigma.apply12(&inner);
        }
        out
    }

    /// `Curv = π_12 ∘ D_2 ∘ D`, returned as the 2-form multiplying each `θ^C`.
    pub fn curvature(&self, alg: &Algebra, frame: &Frame, c: &[Element; 6]) -> [Element; 6] {
        frame_pi12(alg, frame, &self.d_two(alg, &self.d_one(alg, c)))
    }

    /// `ξ_a θ² ⊗ θ^a + π_12 σ_12 σ_23 σ_12 (ξ ⊗ θ ⊗ θ)`.
    pub fn curvature_braided(&self, alg: &Algebra, frame: &Frame, c: &[Element; 6]) -> [Element; 6] {
        let th = frame.from_frame(alg, &self.dirac);
        let th2 = alg.mul(&th, &th);
        let mut t = TensorTri::zero();
        for (a, f) in c.iter().enumerate() {
            for (b, u) in self.dirac.iter().enumerate() {
                for (d, v) in self.dirac.iter().enumerate() {
                    if f.is_zero() || u.is_zero() || v.is_zero() {
                        continue;
                    }
                    t.add([a as u8, b as u8, d as u8], &alg.product(&[f, u, v]));
                }
            }
        }
        let t = self.sigma.apply12(&self.sigma.apply23(&self.sigma.apply12(&t)));
        let mut out = frame_pi12(alg, frame, &t);
        for (a, f) in c.iter().enumerate() {
            if !f.is_zero() {
                out[a] += &alg.mul(f, &th2);
            }
        }
        out
    }
}

/// `π(f θ^A ⊗ θ^B) = f θ^A θ^B`.
pub fn frame_pi(alg: &Algebra, frame: &Frame, t: &TensorBi) -> Element {
    let mut out = Element::zero();
    for (s, f) in t.terms() {
        out += &alg.product(&[f, &frame.theta[s[0] as usize], &frame.theta[s[1] as usize]]);
    }
    out
}

/// `π_12` on a frame 3-tensor, per last frame index.
pub fn frame_pi12(alg: &Algebra, frame: &Frame, t: &TensorTri) -> [Element; 6] {
    let mut out: [Element; 6] = Default::default();
    for (s, f) in t.terms() {
        out[s[2] as usize] += &alg.product(&[f, &frame.theta[s[0] as usize], &frame.theta[s[1] as usize]]);
    }
    out
}

/// Frame tensor to the coordinate-form basis:
/// `f θ^A ⊗ θ^B = f T^B_J T^A_I ω^I ⊗ ω^J`.
pub fn frame_to_xi<const N: usize>(alg: &Algebra, frame: &Frame, t: &Tensor<N>) -> Tensor<N> {
    let mut out = Tensor::zero();
    for (s, f) in t.terms() {
        let mut acc: Vec<([u8; N], Element)> = vec![([0u8; N], f.clone())];
        for k in (0..N).rev() {
            let mut next = Vec::new();
            for (slots, c) in &acc {
                for (i, tt) in frame.left[s[k] as usize].iter().enumerate() {
                    if tt.is_zero() {
                        continue;
                    }
                    let mut sl = *slots;
                    sl[k] = i as u8;
                    next.push((sl, alg.mul(c, tt)));
                }
            }
            acc = next;
        }
        for (sl, c) in acc {
            out.add(sl, &c);
        }
    }
    out
}

/// Coordinate-form tensor to the frame basis:
/// `f ω^I ⊗ ω^J = f ε^I_A ε^J_B θ^A ⊗ θ^B`.
pub fn xi_to_frame<const N: usize>(alg: &Algebra, frame: &Frame, t: &Tensor<N>) -> Tensor<N> {
    let mut out = Tensor::zero();
    for (s, f) in t.terms() {
        let mut acc: Vec<([u8; N], Element)> = vec![([0u8; N], f.clone())];
        for k in 0..N {
            let mut next = Vec::new();
            for (slots, c) in &acc {
                for (a, e) in frame.inv[s[k] as usize].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let mut sl = *slots;
                    sl[k] = a as u8;
                    next.push((sl, alg.mul(c, e)));
                }
            }
            acc = next;
        }
        for (sl, c) in acc {
            out.add(sl, &c);
        }
    }
    out
}

/// `g(θ^A ⊗ θ^B) = g^{ab}` on every block, `a = A mod 3`, `b = B mod 3`.
pub fn frame_metric(alg: &Algebra) -> Metric {
    let g = &alg.consts.g;
    let mut table = vec![vec![Element::zero(); 6]; 6];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            let c = g.ginv(a % 3, b % 3).clone();
            let mixed = (a < 3) != (b < 3);
            *v = Element::scalar(if mixed && a % 3 == 1 { -c } else { c });
        }
    }
    Metric { table }
}

/// `g_23` of a frame 3-tensor, as frame components of a 1-form.
pub fn frame_g23(metric: &Metric, t: &TensorTri) -> [Element; 6] {
    let mut out: [Element; 6] = Default::default();
    for (s, f) in t.terms() {
        let v = &metric.table[s[1] as usize][s[2] as usize];
        if let Some(c) = v.as_scalar() {
            if !c.is_zero() {
                out[s[0] as usize].add_scaled(f, &c);
            }
        }
    }
    out
}

/// `(f θ^A ⊗ θ^B)* = σ(θ^B* ⊗ θ^A*) f*`, with the frame conjugates read off
/// from the involution of the algebra.
pub fn frame_tensor_involution(alg: &Algebra, frame: &Frame, sigma: &Sigma, t: &TensorBi) -> TensorBi {
    let stars: Vec<[Element; 6]> = (0..6).map(|a| frame.to_frame(alg, &alg.star(&frame.theta[a]))).collect();
    let mut out = TensorBi::zero();
    for (s, f) in t.terms() {
        let fs = alg.star(f);
        let mut pre = TensorBi::zero();
        for (c, u) in stars[s[1] as usize].iter().enumerate() {
            for (d, v) in stars[s[0] as usize].iter().enumerate() {
                if u.is_zero() || v.is_zero() {
                    continue;
                }
                pre.add([c as u8, d as u8], &alg.product(&[u, v, &fs]));
            }
        }
        out = &out + &sigma.apply(&pre);
    }
    out
}

/// `Σ_{e,f,g} A^{ae}_{df} g^{fg} B^{cb}_{eg}` as a map `(a, b, c, d) -> value`.
pub fn compat_contraction<'a>(a: &'a Mat, b: &'a Mat, g: &'a Mat) -> impl Fn(usize, usize, usize, usize) -> Scalar + 'a {
    move |i, j, k, l| {
        let mut acc = Scalar::zero();
        for e in 0..3 {
            for f in 0..3 {
                for gg in 0..3 {
                    let x = &a[(3 * i + e, 3 * l + f)];
                    let y = &g[(f, gg)];
                    let z = &b[(3 * k + j, 3 * e + gg)];
                    if !(x.is_zero() || y.is_zero() || z.is_zero()) {
                        acc = &acc + &(&(x * y) * z);
                    }
                }
            }
        }
        acc
    }
}

/// The scalar `κ` with `A^{ae}_{df} g^{fg} B^{cb}_{eg} = κ g^{ac} δ^b_d`,
/// or `None` if the contraction is not of that shape.
pub fn conformal_defect(a: &Mat, b: &Mat, g: &Mat) -> Option<Scalar> {
    let f = compat_contraction(a, b, g);
    let mut kappa: Option<Scalar> = None;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let v = f(i, j, k, l);
                    let base = if j == l { g[(i, k)].clone() } else { Scalar::zero() };
                    if base.is_zero() {
                        if !v.is_zero() {
                            return None;
                        }
                        continue;
                    }
                    let r = &v / &base;
                    match &kappa {
                        None => kappa = Some(r),
                        Some(k0) if *k0 == r => {}
                        Some(_) => return None,
                    }
                }
            }
        }
    }
    kappa
}

/// Frame tensor with a single constant entry.
pub fn frame_basis(s: [u8; 2], c: Scalar) -> TensorBi {
    TensorBi::basis(s, Element::scalar(c))
}
