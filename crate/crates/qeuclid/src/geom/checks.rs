//! The identities of the frame formalism, grouped the way the `verify`
//! command reports them.

use super::connection::*;
use super::frame::{Alpha, Frame};
use super::Check;
use crate::ncalg::{Algebra, Config, Element, Letter, Monomial};
use crate::omega::{
    form, split_two_form, Calculus, InvariantForms, Metric, Sigma, SigmaChoice, TensorBi, TensorTri,
};
use crate::qscalar::Scalar;
use crate::rmat::{iter4, INDEX_NAMES};

/// Everything the checks need, built once per thread.
pub struct Geometry {
    pub alg: Algebra,
    pub forms: InvariantForms,
    pub frame: Frame,
}

impl Geometry {
    pub fn new(cfg: Config, alpha: Alpha) -> Geometry {
        let alg = Algebra::new(cfg);
        let forms = InvariantForms::new(&alg);
        let frame = Frame::new(&alg, alpha);
        Geometry { alg, forms, frame }
    }
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry::new(Config::default(), Alpha::Symbolic)
    }
}

/// Restriction of the σ choices and calculi a suite iterates over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Selection {
    pub sigma: Option<SigmaChoice>,
    pub calculus: Option<Calculus>,
}

impl Selection {
    pub fn sigmas(&self) -> Vec<SigmaChoice> {
        self.sigma.map_or(SigmaChoice::ALL.to_vec(), |s| vec![s])
    }

    pub fn calculi(&self) -> Vec<Calculus> {
        self.calculus.map_or(Calculus::ALL.to_vec(), |c| vec![c])
    }

    pub fn includes(&self, c: Calculus) -> bool {
        self.calculus.is_none_or(|x| x == c)
    }
}

fn n(i: usize) -> &'static str {
    INDEX_NAMES[i % 3]
}

fn fname(a: usize) -> String {
    if a < 3 {
        format!("theta^{}", n(a))
    } else {
        format!("bartheta^{}", n(a))
    }
}

fn sum_terms(alg: &Algebra, terms: Vec<(Scalar, Vec<&Element>)>) -> Element {
    let mut out = Element::zero();
    for (c, fs) in terms {
        if c.is_zero() || fs.iter().any(|f| f.is_zero()) {
            continue;
        }
        out.add_scaled(&alg.product(&fs), &c);
    }
    out
}

fn generators(alg: &Algebra) -> Vec<(String, Element)> {
    let mut v: Vec<(String, Element)> = Letter::all()
        .into_iter()
        .filter(|l| !l.is_form())
        .map(|l| (l.to_string(), Element::letter(l)))
        .collect();
    v.push(("alpha".into(), alg.alpha_pow(1)));
    v
}

fn coordinates(alg: &Algebra) -> Vec<(String, Element)> {
    vec![
        ("xm".into(), alg.x(0)),
        ("x0".into(), alg.x(1)),
        ("xp".into(), alg.x(2)),
        ("r".into(), alg.r_pow(1)),
        ("Lam".into(), alg.lam_pow(1)),
    ]
}

/// Number of index tuples of the frame relation whose product terms all
/// vanish by the triangular shape of `θ^a_i` and the zeros of `R̂`.
pub fn termwise_vanishing(c: &[[Element; 3]; 3], r: &crate::rmat::BraidMatrix) -> usize {
    iter4()
        .filter(|&(a, b, i, j)| {
            (0..9).all(|cd| {
                let (x, y) = (cd / 3, cd % 3);
                (r.entry(a, b, x, y).is_zero() || c[y][j].is_zero() || c[x][i].is_zero())
                    && (r.entry(x, y, i, j).is_zero() || c[b][y].is_zero() || c[a][x].is_zero())
            })
        })
        .count()
}

/// `R̂^{ab}_{cd} B^d_j A^c_i - A^b_l B^a_k R̂^{kl}_{ij}` for all index tuples.
pub fn frame_relation(
    alg: &Algebra,
    a_m: &[[Element; 3]; 3],
    b_m: &[[Element; 3]; 3],
    r: &crate::rmat::BraidMatrix,
) -> Vec<((usize, usize, usize, usize), Element)> {
    iter4()
        .map(|(a, b, i, j)| {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for c in 0..3 {
                for d in 0..3 {
                    lhs.push((r.entry(a, b, c, d).clone(), vec![&b_m[d][j], &a_m[c][i]]));
                    rhs.push((r.entry(c, d, i, j).clone(), vec![&a_m[b][d], &b_m[a][c]]));
                }
            }
            ((a, b, i, j), &sum_terms(alg, lhs) - &sum_terms(alg, rhs))
        })
        .collect()
}

pub fn frame_checks(geo: &Geometry, sel: &Selection) -> Vec<Check> {
    let Geometry { alg, frame, .. } = geo;
    let c = alg.consts;
    let mut out = Vec::new();

    let rel = frame_relation(alg, &frame.coeff, &frame.coeff, &c.rhat);
    let bad: Vec<String> = rel
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|((a, b, i, j), e)| format!("({},{},{},{}): {}", n(*a), n(*b), n(*i), n(*j), e.render()))
        .collect();
    out.push(Check::truth("frame relation: 81 equations", bad.is_empty() && rel.len() == 81, || bad.join("; ")));
    let trivial = termwise_vanishing(&frame.coeff, &c.rhat);
    out.push(Check::pass("frame relation: equations trivial by triangularity").with_note(format!("{trivial} of 81")));
    let enlarged = Sigma::enlarged();
    for (block, m, first, second) in [("V", &enlarged.v, 0, 3), ("Vbar", &enlarged.vbar, 3, 0)] {
        let mut bad = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let mut rhs = Element::zero();
                for cd in 0..9 {
                    let k = &m[(3 * a + b, cd)];
                    if !k.is_zero() {
                        rhs.add_scaled(&alg.mul(&frame.theta[cd / 3 + second], &frame.theta[cd % 3 + first]), &-k.clone());
                    }
                }
                let lhs = alg.mul(&frame.theta[a + first], &frame.theta[b + second]);
                if lhs != rhs {
                    bad.push(format!("({a},{b}) {}", (&lhs - &rhs).render()));
                }
            }
        }
        let id = if first == 0 { "theta bartheta" } else { "bartheta theta" };
        out.push(Check::truth(format!("{id} = -{block} flipped"), bad.is_empty(), || bad.join("; ")));
    }

    let scalars = [("x-", alg.x(0)), ("x0", alg.x(1)), ("x+", alg.x(2)), ("r", alg.r_pow(1)), ("Lam", alg.lam_pow(1))];
    for calc in [Calculus::Unbarred, Calculus::Barred] {
        if !sel.includes(calc) && !sel.includes(Calculus::Enlarged) {
            continue;
        }
        for a in calc.slots() {
            for (name, f) in &scalars {
                let id = format!("[{name}, {}] = 0", fname(a as usize));
                out.push(Check::zero(id, &alg.commutator(f, &frame.theta[a as usize])));
            }
        }
    }

    let g = &c.g;
    for a in 0..3 {
        let mut rhs = Element::zero();
        for b in 0..3 {
            rhs.add_scaled(&frame.theta[b + 3], g.g(b, a));
        }
        out.push(Check::equal(format!("(theta^{})* = bartheta^b g_b{}", n(a), n(a)), &alg.star(&frame.theta[a]), &rhs));
    }

    let p = &c.proj;
    for (pname, pm) in [("P_t", &p.pt), ("P_s", &p.ps)] {
        for bar in [0usize, 3] {
            let mut bad = Vec::new();
            for ab in 0..9 {
                let mut e = Element::zero();
                for cd in 0..9 {
                    let k = &pm[(ab, cd)];
                    if !k.is_zero() {
                        e.add_scaled(&alg.mul(&frame.theta[cd / 3 + bar], &frame.theta[cd % 3 + bar]), k);
                    }
                }
                if !e.is_zero() {
                    bad.push(e.render());
                }
            }
            let which = if bar == 0 { "theta theta" } else { "bartheta bartheta" };
            out.push(Check::truth(format!("{pname} {which} = 0"), bad.is_empty(), || bad.join("; ")));
        }
    }

    // κ = r⁻² α⁻² in g_cd θ^d_j θ^c_i = κ g_ij and g^ij θ^b_j θ^a_i = κ g^ab.
    let kappa = alg.mul(&alg.r_pow(-2), &frame.alpha.pow(alg, -2));
    for i in 0..3 {
        for j in 0..3 {
            let mut lhs = Vec::new();
            let mut lhs2 = Vec::new();
            for x in 0..3 {
                for y in 0..3 {
                    lhs.push((g.g(x, y).clone(), vec![&frame.coeff[y][j], &frame.coeff[x][i]]));
                    lhs2.push((g.ginv(x, y).clone(), vec![&frame.coeff[j][y], &frame.coeff[i][x]]));
                }
            }
            let lhs = sum_terms(alg, lhs);
            let lhs2 = sum_terms(alg, lhs2);
            out.push(Check::equal(format!("g_cd theta^d_{} theta^c_{} = kappa g", n(j), n(i)), &lhs, &kappa.scale(g.g(i, j))));
            out.push(Check::equal(
                format!("g^ij theta^{}_j theta^{}_i = kappa g", n(j), n(i)),
                &lhs2,
                &kappa.scale(g.ginv(i, j)),
            ));
        }
    }
    out
}

pub fn lambda_checks(geo: &Geometry) -> Vec<Check> {
    let Geometry { alg, frame, forms } = geo;
    let c = alg.consts;
    let l = &frame.lambda;
    let mut out = Vec::new();
    let mut sum = Element::zero();
    let mut sumbar = Element::zero();
    for a in 0..3 {
        sum -= &alg.mul(&l[a], &frame.theta[a]);
        sumbar -= &alg.mul(&l[a + 3], &frame.theta[a + 3]);
    }
    out.push(Check::equal("theta = -lambda_a theta^a", &sum, &forms.theta));
    out.push(Check::equal("bartheta = -barlambda_a bartheta^a", &sumbar, &forms.theta_bar));

    let q = Scalar::q();
    let h = Scalar::h();
    for bar in [0usize, 3] {
        let (lm, l0, lp) = (&l[bar], &l[bar + 1], &l[bar + 2]);
        let tag = if bar == 0 { "lambda" } else { "barlambda" };
        out.push(Check::equal(format!("{tag}_- {tag}_0 = q {tag}_0 {tag}_-"), &alg.mul(lm, l0), &alg.mul(l0, lm).scale(&q)));
        out.push(Check::equal(
            format!("{tag}_+ {tag}_0 = q^-1 {tag}_0 {tag}_+"),
            &alg.mul(lp, l0),
            &alg.mul(l0, lp).scale(&q.pow(-1)),
        ));
        out.push(Check::equal(format!("[{tag}_+, {tag}_-] = h {tag}_0^2"), &alg.commutator(lp, lm), &alg.mul(l0, l0).scale(&h)));
        let mut bad = Vec::new();
        let mut bad_up = Vec::new();
        for ab in 0..9 {
            let mut lower = Element::zero();
            let mut upper = Element::zero();
            for cd in 0..9 {
                let prod = alg.mul(&l[bar + cd / 3], &l[bar + cd % 3]);
                lower.add_scaled(&prod, &c.proj.pa[(ab, cd)]);
                upper.add_scaled(&prod, &c.proj.pa[(cd, ab)]);
            }
            if !lower.is_zero() {
                bad.push(lower.render());
            }
            if !upper.is_zero() {
                bad_up.push(upper.render());
            }
        }
        out.push(Check::truth(format!("P_a {tag} {tag} = 0"), bad.is_empty(), || bad.join("; ")));
        out.push(Check::truth(format!("2 {tag}_c {tag}_d P_a^cd_ab = 0"), bad_up.is_empty(), || bad_up.join("; ")));
        let mut glam = Element::zero();
        for a in 0..3 {
            for b in 0..3 {
                glam.add_scaled(&alg.mul(&l[bar + a], &l[bar + b]), c.g.ginv(a, b));
            }
        }
        if bar == 0 {
            let rhs = alg.product(&[&alg.lam_pow(2), &frame.alpha.pow(alg, 2)]).scale(&(&q * &h.pow(-2)));
            out.push(Check::equal("g^ab lambda_a lambda_b = q h^-2 (Lam alpha)^2", &glam, &rhs));
        }
    }
    for a in 0..3 {
        let mut rhs = Element::zero();
        for b in 0..3 {
            rhs.add_scaled(&l[b + 3], &-c.g.ginv(a, b).clone());
        }
        out.push(Check::equal(format!("lambda_{}* = -g^ab barlambda_b", n(a)), &alg.star(&l[a]), &rhs));
        out.push(Check::zero(format!("[Lam, lambda_{}] = 0", n(a)), &alg.commutator(&alg.lam_pow(1), &l[a])));
    }
    let lam_q = alg.lam_pow(1).scale(&q);
    for a in 0..3 {
        for i in 0..3 {
            let rhs = alg.mul(&lam_q, &frame.e[a][i]);
            out.push(Check::equal(format!("[lambda_{}, x^{}] = q Lam e_a^i", n(a), n(i)), &alg.commutator(&l[a], &alg.x(i)), &rhs));
        }
    }
    for (name, f) in generators(alg) {
        let mut rhs = Element::zero();
        for a in 0..3 {
            rhs += &alg.mul(&alg.commutator(&l[a], &f), &frame.theta[a]);
        }
        out.push(Check::equal(format!("d{name} = e_a({name}) theta^a"), &forms.d(alg, &f), &rhs));
    }
    out
}

pub fn rtt_checks(geo: &Geometry) -> Vec<Check> {
    let Geometry { alg, frame, .. } = geo;
    let c = alg.consts;
    let e = &frame.e;
    let th = &frame.coeff;
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { Element::one() } else { Element::zero() };
            let lhs = sum_terms(alg, (0..3).map(|a| (Scalar::one(), vec![&e[a][i], &th[a][j]])).collect());
            out.push(Check::equal(format!("e_a^{} theta^a_{} = delta", n(i), n(j)), &lhs, &delta));
            let lhs = sum_terms(alg, (0..3).map(|k| (Scalar::one(), vec![&th[i][k], &e[j][k]])).collect());
            out.push(Check::equal(format!("theta^{}_j e_{}^j = delta", n(i), n(j)), &lhs, &delta));
        }
    }
    for i in 0..3 {
        for a in 0..3 {
            let lhs = frame.inv[i][a].clone();
            let rhs = alg.mul(&e[a][i], &alg.lam_pow(1));
            out.push(Check::equal(format!("xi^{} = e_{}^{} Lam theta^a", n(i), n(a), n(i)), &lhs, &rhs));
        }
    }
    let mut bad = Vec::new();
    for (i, j, a, b) in iter4() {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..3 {
            for l in 0..3 {
                lhs.push((c.rhat.entry(i, j, k, l).clone(), vec![&e[a][k], &e[b][l]]));
                rhs.push((c.rhat.entry(k, l, a, b).clone(), vec![&e[k][i], &e[l][j]]));
            }
        }
        let d = &sum_terms(alg, lhs) - &sum_terms(alg, rhs);
        if !d.is_zero() {
            bad.push(format!("({i}{j}{a}{b}) {}", d.render()));
        }
    }
    out.push(Check::truth("RTT: 81 equations", bad.is_empty(), || bad.join("; ")));
    let r2a2 = alg.mul(&alg.r_pow(2), &frame.alpha.pow(alg, 2));
    let g = &c.g;
    for i in 0..3 {
        for j in 0..3 {
            let lhs = sum_terms(
                alg,
                (0..9).map(|ab| (g.ginv(ab / 3, ab % 3).clone(), vec![&e[ab / 3][i], &e[ab % 3][j]])).collect(),
            );
            out.push(Check::equal(format!("g^ab e^{}_a e^{}_b = r^2 alpha^2 g^ij", n(i), n(j)), &lhs, &r2a2.scale(g.ginv(i, j))));
            let lhs = sum_terms(
                alg,
                (0..9).map(|kl| (g.g(kl / 3, kl % 3).clone(), vec![&e[i][kl / 3], &e[j][kl % 3]])).collect(),
            );
            out.push(Check::equal(format!("g_ij e^i_{} e^j_{} = r^2 alpha^2 g_ab", n(i), n(j)), &lhs, &r2a2.scale(g.g(i, j))));
        }
    }
    out
}

fn connections(geo: &Geometry, sel: &Selection) -> Vec<Connection> {
    let frame = &geo.frame;
    let mut out = Vec::new();
    for s in sel.sigmas() {
        if sel.includes(Calculus::Unbarred) {
            out.push(Connection::single(frame, s, false));
        }
        if sel.includes(Calculus::Barred) {
            out.push(Connection::single(frame, s, true));
        }
    }
    if sel.includes(Calculus::Enlarged) {
        for s in sel.sigmas() {
            for barred in [false, true] {
                out.push(Connection::new(frame, s, s.other(), Calculus::Enlarged, barred));
            }
        }
    }
    out
}

/// `(q²-1)[θ ⊗ ξ^i + k ξ^i ⊗ θ] - q²(1+q⁻¹) r⁻² x^i ξ^l ⊗ ξ^m g_lm`.
/// The covariant derivative for `S = qR̂` equals this with `k = 1`.
pub fn explicit_dxi(geo: &Geometry, i: usize, k: &Scalar) -> TensorBi {
    let Geometry { alg, forms, .. } = geo;
    let q = Scalar::q();
    let one = Scalar::one();
    let th = &forms.theta;
    let xi = alg.xi(i);
    let mut rhs = TensorBi::from_forms(alg, [th, &xi]);
    rhs.add_tensor(&TensorBi::from_forms(alg, [&xi, th]), k);
    let mut rhs = rhs.scale(&(&q.pow(2) - &one));
    let pref = alg.mul(&alg.r_pow(-2), &alg.x(i)).scale(&-(&q.pow(2) * &(&one + &q.pow(-1))));
    for l in 0..3 {
        for m in 0..3 {
            let gl = alg.consts.g.g(l, m);
            if !gl.is_zero() {
                rhs = &rhs + &TensorBi::basis([l as u8, m as u8], pref.scale(gl));
            }
        }
    }
    rhs
}

pub fn torsion_checks(geo: &Geometry, sel: &Selection) -> Vec<Check> {
    let Geometry { alg, frame, forms } = geo;
    let c = alg.consts;
    let mut out = Vec::new();
    for conn in connections(geo, sel) {
        for a in conn.calculus.slots() {
            let th = &frame.theta[a as usize];
            let dth = forms.differential(alg, th, conn.barred);
            let pid = frame_pi(alg, frame, &conn.d_frame(a));
            out.push(Check::equal(format!("{}: torsion of {}", conn.label(), fname(a as usize)), &dth, &pid));
        }
        for i in 0..6u8 {
            for j in 0..6u8 {
                if !(conn.calculus.slots().contains(&i) && conn.calculus.slots().contains(&j)) {
                    continue;
                }
                let t = frame_basis([i, j], Scalar::one());
                let e = frame_pi(alg, frame, &(&conn.sigma.apply(&t) + &t));
                if !e.is_zero() {
                    out.push(Check::fail(format!("{}: pi(sigma+1) on ({i},{j})", conn.label()), e.render()));
                }
            }
        }
        out.push(Check::pass(format!("{}: pi(sigma+1) = 0 on the frame basis", conn.label())));
    }

    let pa = &c.proj.pa;
    for bar in [0usize, 3] {
        if !sel.includes(if bar == 0 { Calculus::Unbarred } else { Calculus::Barred }) {
            continue;
        }
        let l = &frame.lambda;
        for a in 0..3 {
            let mut rhs = Element::zero();
            for d in 0..3 {
                for bc in 0..9 {
                    let k = &pa[(3 * d + a, bc)] + &pa[(3 * a + d, bc)];
                    if k.is_zero() {
                        continue;
                    }
                    let t = alg.product(&[&l[bar + d], &frame.theta[bar + bc / 3], &frame.theta[bar + bc % 3]]);
                    rhs.add_scaled(&t, &k);
                }
            }
            let lhs = forms.differential(alg, &frame.theta[bar + a], bar == 3);
            out.push(Check::equal(format!("Maurer-Cartan for {}", fname(bar + a)), &lhs, &rhs));
        }
        let (th, barred) = if bar == 0 { (&forms.theta, false) } else { (&forms.theta_bar, true) };
        let k = &forms.differential(alg, th, barred) + &alg.mul(th, th);
        out.push(Check::zero(format!("K = 0 for {}", if barred { "bartheta" } else { "theta" }), &k));
    }

    if sel.includes(Calculus::Unbarred) {
        let one = Scalar::one();
        for s in sel.sigmas() {
            let conn = Connection::single(frame, s, false);
            for i in 0..3 {
                let dxi = frame_to_xi(alg, frame, &conn.d_one(alg, &frame.to_frame(alg, &alg.xi(i))));
                match s {
                    SigmaChoice::QRInv => out.push(Check::truth(
                        format!("{}: D xi^{} = 0", conn.label(), n(i)),
                        dxi.is_zero(),
                        || dxi.render(),
                    )),
                    SigmaChoice::QR => {
                        let rhs = explicit_dxi(geo, i, &one);
                        let diff = &dxi - &rhs;
                        out.push(Check::truth(format!("{}: D xi^{} = (q^2-1)(theta (x) xi + xi (x) theta) - q(q+1) r^-2 x g xi xi", conn.label(), n(i)), diff.is_zero(), || {
                            diff.render()
                        }));
                    }
                }
            }
            for i in 0..3u8 {
                for (name, f) in coordinates(alg) {
                    let w = frame.to_frame(alg, &alg.mul(&form(i), &f));
                    let lhs = conn.d_one(alg, &w);
                    let df = conn.d_function(alg, &f);
                    let mut rhs = TensorBi::zero();
                    let xi_f = frame.to_frame(alg, &form(i));
                    for (a, u) in xi_f.iter().enumerate() {
                        for (b, v) in df.iter().enumerate() {
                            if !u.is_zero() && !v.is_zero() {
                                rhs.add([a as u8, b as u8], &alg.mul(u, v));
                            }
                        }
                    }
                    let mut rhs = conn.sigma.apply(&rhs);
                    for (sl, cf) in conn.d_one(alg, &xi_f).terms() {
                        rhs.add(*sl, &alg.mul(cf, &f));
                    }
                    let diff = &lhs - &rhs;
                    out.push(Check::truth(
                        format!("{}: right Leibniz on xi^{} {name}", conn.label(), n(i as usize)),
                        diff.is_zero(),
                        || diff.render(),
                    ));
                }
            }
        }
    }
    out
}

/// `Ric(θ^A) = -g_23((L ⊗ 1) Curv(θ^A))`, where `L` lifts a 2-form to a
/// frame tensor through its normal-ordered coordinate-form expansion.
pub fn ricci(geo: &Geometry, conn: &Connection, a: usize) -> [Element; 6] {
    let Geometry { alg, frame, .. } = geo;
    let mut c: [Element; 6] = Default::default();
    c[a] = Element::one();
    let curv = conn.curvature(alg, frame, &c);
    let mut t = TensorTri::zero();
    for (last, w) in curv.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let mut lift = TensorBi::zero();
        for ((i, j), f) in split_two_form(w) {
            lift.add([i, j], &f);
        }
        for (s, f) in xi_to_frame(alg, frame, &lift).terms() {
            t.add([s[0], s[1], last as u8], f);
        }
    }
    let r = frame_g23(&frame_metric(alg), &t);
    std::array::from_fn(|k| -&r[k])
}

pub fn curvature_checks(geo: &Geometry, sel: &Selection) -> Vec<Check> {
    let Geometry { alg, frame, .. } = geo;
    let mut out = Vec::new();
    let f = &alg.x(2) + &alg.r_pow(1);
    for conn in connections(geo, sel) {
        let slots: Vec<u8> = match conn.calculus {
            Calculus::Enlarged => (0..6).collect(),
            _ => conn.calculus.slots().collect(),
        };
        for i in slots {
            let name = crate::omega::slot_name(i);
            let w = frame.to_frame(alg, &form(i));
            let curv = conn.curvature(alg, frame, &w);
            let bad: Vec<String> = curv.iter().filter(|e| !e.is_zero()).map(|e| e.render()).collect();
            out.push(Check::truth(format!("{}: Curv({name}) = 0", conn.label()), bad.is_empty(), || bad.join("; ")));
            let braided = conn.curvature_braided(alg, frame, &w);
            let bad: Vec<String> = braided.iter().filter(|e| !e.is_zero()).map(|e| e.render()).collect();
            out.push(Check::truth(format!("{}: braided Curv({name}) = 0", conn.label()), bad.is_empty(), || {
                bad.join("; ")
            }));
            let fw: [Element; 6] = std::array::from_fn(|k| alg.mul(&f, &w[k]));
            let lhs = conn.curvature(alg, frame, &fw);
            let ok = (0..6).all(|k| lhs[k] == alg.mul(&f, &curv[k]));
            out.push(Check::truth(format!("{}: Curv left linear on {name}", conn.label()), ok, || "differs".into()));
        }
        let range: Vec<usize> = match conn.calculus {
            Calculus::Enlarged => (0..6).collect(),
            _ => conn.calculus.slots().map(usize::from).collect(),
        };
        for a in range {
            let ric = ricci(geo, &conn, a);
            let bad: Vec<String> = ric.iter().filter(|e| !e.is_zero()).map(|e| e.render()).collect();
            out.push(Check::truth(format!("{}: Ric({}) = 0", conn.label(), fname(a)), bad.is_empty(), || bad.join("; ")));
        }
    }
    out
}

fn expected_defect(s: SigmaChoice) -> Scalar {
    match s {
        SigmaChoice::QR => Scalar::q_pow(2),
        SigmaChoice::QRInv => Scalar::q_pow(-2),
    }
}

/// Reads `κ` off `g_23 D_2(θ^A ⊗ θ^B) = (κ - 1) g^{AB} θ_D` for every pair
/// in the given blocks; `None` if the result is not of that shape.
fn element_defect(geo: &Geometry, conn: &Connection, pairs: &[(u8, u8)]) -> Option<Scalar> {
    let alg = &geo.alg;
    let metric = frame_metric(alg);
    let mut kappa: Option<Scalar> = None;
    for &(a, b) in pairs {
        let t = frame_basis([a, b], Scalar::one());
        let x = frame_g23(&metric, &conn.d_two(alg, &t));
        let gab = metric.table[a as usize][b as usize].as_scalar().unwrap_or_default();
        if gab.is_zero() {
            if x.iter().any(|e| !e.is_zero()) {
                return None;
            }
            continue;
        }
        // x = (κ - 1) g^{ab} θ_D componentwise.
        let mut ratio: Option<Scalar> = None;
        for (xc, tc) in x.iter().zip(conn.dirac.iter()) {
            if tc.is_zero() {
                if !xc.is_zero() {
                    return None;
                }
                continue;
            }
            let (m, k) = tc.terms().next()?;
            let r = &xc.coeff(m) / k;
            if *xc != tc.scale(&r) {
                return None;
            }
            match &ratio {
                None => ratio = Some(r),
                Some(r0) if *r0 == r => {}
                Some(_) => return None,
            }
        }
        let kap = &(&ratio.unwrap_or_default() / &gab) + &Scalar::one();
        match &kappa {
            None => kappa = Some(kap),
            Some(k0) if *k0 == kap => {}
            Some(_) => return None,
        }
    }
    kappa
}

pub fn metric_compat_checks(geo: &Geometry, sel: &Selection) -> Vec<Check> {
    let Geometry { alg, frame, .. } = geo;
    let c = alg.consts;
    let g = &c.g.upper;
    let mut out = Vec::new();
    let show = |k: &Option<Scalar>| k.as_ref().map_or("none".to_string(), |k| k.render());
    for s in sel.sigmas() {
        let sm = s.matrix(c);
        let kappa = conformal_defect(&sm, &sm, g);
        let want = expected_defect(s);
        for barred in [false, true] {
            let calc = if barred { Calculus::Barred } else { Calculus::Unbarred };
            if !sel.includes(calc) {
                continue;
            }
            let conn = Connection::single(frame, s, barred);
            let pairs: Vec<(u8, u8)> =
                calc.slots().flat_map(|a| calc.slots().map(move |b| (a, b))).collect();
            let ek = element_defect(geo, &conn, &pairs);
            out.push(
                Check::truth(format!("{}: conformal defect", conn.label()), kappa.as_ref() == Some(&want), || {
                    format!("matrix defect {}", show(&kappa))
                })
                .with_note(format!("defect {}", show(&kappa))),
            );
            out.push(Check::truth(format!("{}: g23 D2 = (defect - 1) g theta", conn.label()), ek == kappa, || {
                format!("element defect {}", show(&ek))
            }));
        }
    }
    if sel.includes(Calculus::Enlarged) {
        let q = Scalar::q();
        let v = c.rhat_inv.m.scale(&q);
        let vbar = c.rhat.m.scale(&q.pow(-1));
        for s in SigmaChoice::ALL {
            let sb = s.other();
            let k1 = conformal_defect(&vbar, &s.matrix(c), g);
            let k2 = conformal_defect(&v, &sb.matrix(c), g);
            let exact = k1.as_ref().is_some_and(Scalar::is_one) && k2.as_ref().is_some_and(Scalar::is_one);
            let label = format!("enlarged[S={s},Sbar={sb}]");
            let expect_exact = s == SigmaChoice::QR;
            let id = if expect_exact {
                format!("{label}: exactly compatible")
            } else {
                format!("{label}: compatibility fails")
            };
            out.push(
                Check::truth(id, exact == expect_exact, || format!("defects {} and {}", show(&k1), show(&k2)))
                    .with_note(format!("defects {} and {}", show(&k1), show(&k2))),
            );
            if expect_exact {
                for barred in [false, true] {
                    let conn = Connection::new(frame, s, sb, Calculus::Enlarged, barred);
                    let mixed: Vec<(u8, u8)> =
                        (0..3).flat_map(|a| (3..6).flat_map(move |b| [(a, b), (b, a)])).collect();
                    let ek = element_defect(geo, &conn, &mixed);
                    out.push(Check::truth(
                        format!("{}: g23 D2 = d g on mixed pairs", conn.label()),
                        ek.as_ref().is_some_and(Scalar::is_one),
                        || format!("element defect {}", show(&ek)),
                    ));
                }
            }
        }
    }
    let mut sym = Vec::new();
    for s in SigmaChoice::ALL {
        let metric = Metric::xi_basis(alg, &frame.alpha.pow(alg, 2));
        let sig = Sigma::new(s, s);
        let t = TensorBi::basis([1, 1], Element::one());
        let a = metric.eval(alg, &sig.apply(&t));
        let b = metric.eval(alg, &t);
        let (m, k) = b.terms().next().expect("g(xi0 xi0) is nonzero");
        sym.push(format!("g o sigma = {} g for {s}", (&a.coeff(m) / k).render()));
    }
    out.push(Check::pass("metric symmetry constant").with_note(sym.join(", ")));
    out
}

pub fn reality_checks(geo: &Geometry, sel: &Selection) -> Vec<Check> {
    let Geometry { alg, frame, forms } = geo;
    let c = alg.consts;
    let mut out = Vec::new();
    for (name, f) in generators(alg) {
        out.push(Check::equal(format!("(d{name})* = dbar({name}*)"), &alg.star(&forms.d(alg, &f)), &forms.dbar(alg, &alg.star(&f))));
    }
    out.push(Check::equal("theta* = -bartheta", &alg.star(&forms.theta), &-&forms.theta_bar));
    for a in 0..3 {
        let mut rhs = Element::zero();
        for b in 0..3 {
            rhs.add_scaled(&frame.theta[b + 3], c.g.g(b, a));
        }
        out.push(Check::equal(format!("(theta^{})* = bartheta^b g_b{}", n(a), n(a)), &alg.star(&frame.theta[a]), &rhs));
    }
    for s in sel.sigmas() {
        let sb = s.other();
        let d = Connection::new(frame, s, sb, Calculus::Unbarred, false);
        let dbar = Connection::new(frame, s, sb, Calculus::Barred, true);
        for i in 0..3u8 {
            let dxi = d.d_one(alg, &frame.to_frame(alg, &form(i)));
            let lhs = frame_tensor_involution(alg, frame, &d.sigma, &dxi);
            let rhs = dbar.d_one(alg, &frame.to_frame(alg, &alg.star(&form(i))));
            let diff = &lhs - &rhs;
            out.push(Check::truth(
                format!("S={s}, Sbar={sb}: (D {})* = Dbar({})*", crate::omega::slot_name(i), crate::omega::slot_name(i)),
                diff.is_zero(),
                || diff.render(),
            ));
        }
        let sigma = Sigma::new(s, sb);
        let mut bad = 0;
        for a in 0..6u8 {
            for b in 0..6u8 {
                let t = frame_basis([a, b], Scalar::one());
                let tt = frame_tensor_involution(alg, frame, &sigma, &frame_tensor_involution(alg, frame, &sigma, &t));
                if tt != t {
                    bad += 1;
                }
            }
        }
        out.push(Check::truth(format!("S={s}, Sbar={sb}: tensor involution is involutive"), bad == 0, || {
            format!("{bad} basis tensors")
        }));
    }
    out
}

/// `θ^a ⊗ θ̄^b g_ab + h.c.` in the frame basis.
pub fn line_element(geo: &Geometry, sigma: &Sigma) -> TensorBi {
    let Geometry { alg, frame, .. } = geo;
    let mut t = TensorBi::zero();
    for a in 0..3u8 {
        for b in 0..3u8 {
            let gab = alg.consts.g.g(a as usize, b as usize);
            if !gab.is_zero() {
                let c = if a == 1 { -gab.clone() } else { gab.clone() };
                t.add([a, b + 3], &Element::scalar(c));
            }
        }
    }
    &t + &frame_tensor_involution(alg, frame, sigma, &t)
}

pub fn ds2_checks(geo: &Geometry) -> Vec<Check> {
    let Geometry { alg, frame, .. } = geo;
    let mut out = Vec::new();
    let (s, sb) = (SigmaChoice::QR, SigmaChoice::QRInv);
    let sigma = Sigma::new(s, sb);
    let ds2 = line_element(geo, &sigma);
    out.push(Check::truth("ds2 is real", frame_tensor_involution(alg, frame, &sigma, &ds2) == ds2, || {
        ds2.render()
    }));
    for barred in [false, true] {
        let conn = Connection::new(frame, s, sb, Calculus::Enlarged, barred);
        let d2 = conn.d_two(alg, &ds2);
        out.push(Check::truth(format!("{}: D2 ds2 = 0", conn.label()), d2.is_zero(), || d2.render()));
    }
    out
}

/// Right-coefficient expansion `df = Σ_i ξ^i ∂_i f`, obtained from the
/// left expansion of `(df)* = Σ_j c_j ξ̄^j` and `(ξ^i)* = ξ̄^j g_ji`.
pub fn partials(geo: &Geometry, f: &Element) -> [Element; 3] {
    let Geometry { alg, forms, .. } = geo;
    let g = &alg.consts.g;
    let parts = crate::omega::split_one_form(&alg.star(&forms.d(alg, f)));
    std::array::from_fn(|i| {
        let mut hs = Element::zero();
        for j in 0..3 {
            hs.add_scaled(&parts[j + 3], g.ginv(i, j));
        }
        alg.star(&hs)
    })
}

fn monomials_up_to(bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for x0 in 0..=bound {
        for xm in 0..=bound - x0 {
            for xp in 0..=bound - x0 - xm {
                if xm > 0 && xp > 0 {
                    continue;
                }
                out.push(Monomial { x0: x0 as i32, xm, xp, ..Monomial::one() });
            }
        }
    }
    out
}

pub fn partials_checks(geo: &Geometry, bound: u32) -> Vec<Check> {
    let Geometry { alg, frame, forms } = geo;
    let r = &alg.consts.rhat;
    let q = Scalar::q();
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let p = partials(geo, &alg.x(j))[i].clone();
            let want = if i == j { Element::one() } else { Element::zero() };
            out.push(Check::equal(format!("d_{} x^{} = delta", n(i), n(j)), &p, &want));
        }
    }
    let mut bad = Vec::new();
    let mut count = 0;
    for m in monomials_up_to(bound) {
        let f = Element::monomial(m);
        let df = partials(geo, &f);
        let mut recon = Element::zero();
        for i in 0..3 {
            recon += &alg.mul(&alg.xi(i), &df[i]);
        }
        if recon != forms.d(alg, &f) {
            bad.push(format!("d = xi^i d_i on {}", m.render()));
        }
        for j in 0..3 {
            let lhs = partials(geo, &alg.mul(&alg.x(j), &f));
            for i in 0..3 {
                count += 1;
                let mut rhs = if i == j { f.clone() } else { Element::zero() };
                for h in 0..3 {
                    for k in 0..3 {
                        let c = r.entry(j, h, i, k);
                        if !c.is_zero() {
                            rhs.add_scaled(&alg.mul(&alg.x(k), &df[h]), &(&q * c));
                        }
                    }
                }
                if lhs[i] != rhs {
                    bad.push(format!("d_{} x^{} on {}", n(i), n(j), m.render()));
                }
            }
        }
    }
    out.push(Check::truth(format!("modified Leibniz rule on monomials of degree <= {bound}"), bad.is_empty(), || {
        bad.join("; ")
    })
    .with_note(format!("{count} operator identities")));
    let f = alg.mul(&alg.x(2), &alg.x(0));
    let df = forms.d(alg, &f);
    let mut via_frame = Element::zero();
    for a in 0..3 {
        via_frame += &alg.mul(&frame.theta[a], &alg.commutator(&frame.lambda[a], &f));
    }
    let p = partials(geo, &f);
    let mut via_xi = Element::zero();
    for i in 0..3 {
        via_xi += &alg.mul(&alg.xi(i), &p[i]);
    }
    out.push(Check::equal("d(xp xm) = theta^a e_a(xp xm)", &df, &via_frame));
    out.push(Check::equal("d(xp xm) = xi^i d_i(xp xm)", &df, &via_xi));
    out
}
