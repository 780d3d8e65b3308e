use logsym::diffop::{self, Atiyah, CochainSpec, LogDiffOp1};
use logsym::divisor::{self, DivisorKind, Logarithmic, Saito, Squarefree};
use logsym::frontend::{print_field, print_form, print_poly, print_scalar, DefKind, ParseError, SessionManifest, Value};
use logsym::logcalc::{assemble_symplectic, res_const, stratum_residues, Frame, Residues, SymplecticData};
use logsym::prequant::{self, Connection1, Flatness, Integrality, Period, Verdict};
use logsym::{poisson, Error, Form, Poly, RatFn, Scalar, Symplectic, VectorField};

use crate::report::Report;
use crate::{FormArg, FrameArg};

/// An error that ends the command with exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Out = Result<Report, Failure>;

fn parse(s: &SessionManifest, text: &str) -> Result<Value, Failure> {
    s.parse_expr(text).map_err(|e: ParseError| Failure(format!("`{text}`: {e}")))
}

fn func(s: &SessionManifest, text: &str) -> Result<Poly, Failure> {
    match parse(s, text)? {
        Value::Func(p) => Ok(p),
        Value::Form(w) if w.degree() == 0 => Ok(w.as_function().expect("0-form")),
        v => Err(Failure(format!("`{text}` is a {}, expected a function", v.kind()))),
    }
}

fn field(s: &SessionManifest, text: &str) -> Result<VectorField, Failure> {
    match parse(s, text)? {
        Value::Field(v) => Ok(v),
        v => Err(Failure(format!("`{text}` is a {}, expected a vector field", v.kind()))),
    }
}

fn form(s: &SessionManifest, text: &str, degree: usize) -> Result<Form, Failure> {
    let w = match parse(s, text)? {
        Value::Form(w) => w,
        Value::Func(p) => Form::function(p),
        v => return Err(Failure(format!("`{text}` is a {}, expected a form", v.kind()))),
    };
    let n = s.chart().nvars();
    if w.degree() == degree {
        Ok(w)
    } else if w.is_zero() && degree <= n {
        Ok(Form::zero(n, degree))
    } else {
        Err(Failure(format!("`{text}` has degree {}, expected {degree}", w.degree())))
    }
}

fn omega(s: &SessionManifest, arg: &FormArg) -> Result<Form, Failure> {
    if let Some(text) = &arg.form {
        return form(s, text, 2);
    }
    let twos: Vec<&Form> = s
        .objects()
        .iter()
        .filter(|o| o.kind == DefKind::Form)
        .filter_map(|o| match &o.value {
            Value::Form(w) if w.degree() == 2 => Some(w),
            _ => None,
        })
        .collect();
    match twos.as_slice() {
        [w] => Ok((*w).clone()),
        [] => Err(Failure("the session declares no 2-form; pass --form".into())),
        _ => Err(Failure("the session declares several 2-forms; pass --form".into())),
    }
}

fn conn(s: &SessionManifest, text: &str) -> Result<Connection1<Scalar>, Failure> {
    Ok(Connection1::new(s.chart(), form(s, text, 1)?)?)
}

fn symplectic(s: &SessionManifest, arg: &FormArg) -> Result<Symplectic, Failure> {
    Ok(assemble_symplectic(s.chart(), &omega(s, arg)?)?)
}

fn scalar(s: &SessionManifest, text: &str) -> Result<Scalar, Failure> {
    func(s, text)?.as_constant().ok_or_else(|| Failure(format!("`{text}` is not a constant")))
}

fn p(s: &SessionManifest, f: &Poly) -> String {
    print_poly(s.chart().ctx().names(), f)
}

fn v(s: &SessionManifest, f: &VectorField) -> String {
    print_field(s.chart().ctx().names(), f)
}

fn w(s: &SessionManifest, f: &Form) -> String {
    print_form(s.chart(), f)
}

fn rat(s: &SessionManifest, r: &RatFn) -> String {
    match r.as_polynomial() {
        Some(q) => p(s, &q),
        None => format!("({}) / ({})", p(s, &r.num), p(s, &r.den)),
    }
}

fn name(s: &SessionManifest, i: usize) -> &str {
    s.chart().name(i)
}

fn cycle(s: &SessionManifest, per: &Period) -> String {
    format!("T_{{{},{}}}", name(s, per.cycle.0), name(s, per.cycle.1))
}

pub fn check_divisor(s: &SessionManifest, fields: &[String]) -> Out {
    let d = s.divisor()?;
    let mut r = match divisor::check_squarefree(d.h()) {
        Squarefree::Reduced => Report::new("check-divisor", true, format!("reduced: h = {}", p(s, d.h()))),
        Squarefree::RepeatedFactor(g) => {
            Report::new("check-divisor", false, format!("not reduced: repeated factor {}", p(s, &g)))
        }
    };
    let kind = match d.kind() {
        DivisorKind::CoordinateNcd(mask) => {
            let coords: Vec<&str> = (0..s.chart().nvars()).filter(|i| (mask >> i) & 1 == 1).map(|i| name(s, i)).collect();
            format!("normal crossings along {}", if coords.is_empty() { "nothing".into() } else { coords.join(" ") })
        }
        DivisorKind::General => "general".into(),
    };
    r.push("kind", kind);
    for text in fields {
        let f = field(s, text)?;
        match divisor::is_logarithmic(&f, &d) {
            Logarithmic::Yes(q) => r.push(text.as_str(), format!("logarithmic, {text}(h) = ({})*h", p(s, &q))),
            Logarithmic::No(rem) => {
                r.passed = false;
                r.push(text.as_str(), format!("not logarithmic, remainder {}", p(s, &rem)));
            }
        }
    }
    Ok(r)
}

pub fn check_saito(s: &SessionManifest, names: &[String]) -> Out {
    let d = s.divisor()?;
    let fs: Vec<VectorField> = names.iter().map(|t| field(s, t)).collect::<Result<_, _>>()?;
    let mut lines = Vec::new();
    let mut all_log = true;
    for (t, f) in names.iter().zip(&fs) {
        let ok = divisor::is_logarithmic(f, &d).is_yes();
        all_log &= ok;
        lines.push((t.clone(), if ok { "logarithmic" } else { "not logarithmic" }.to_string()));
    }
    let mut r = if !all_log {
        Report::new("check-saito", false, "not free: some field is not logarithmic")
    } else {
        match divisor::saito_check(fs.clone(), &d)? {
            Saito::Free(b) => Report::new(
                "check-saito",
                true,
                format!("free: det = {} = {}*h", p(s, &d.h().scale(b.certificate())), print_scalar(b.certificate())),
            ),
            Saito::NotCertified(det) => {
                Report::new("check-saito", false, format!("not free: det = {} is not a unit times h", p(s, &det)))
            }
        }
    };
    r.push("h", p(s, d.h()));
    for (k, val) in lines {
        r.push(k, val);
    }
    Ok(r)
}

pub fn check_logsymplectic(s: &SessionManifest, arg: &FormArg, frame: FrameArg, fields: &[String]) -> Out {
    let om = omega(s, arg)?;
    let chart = s.chart().clone();
    let (div, fr) = match frame {
        FrameArg::Log => (
            divisor::Divisor::coordinate(chart.nvars(), chart.ctx().divisor_mask()),
            Frame::log(&chart),
        ),
        FrameArg::Saito => {
            let fs: Vec<VectorField> = fields.iter().map(|t| field(s, t)).collect::<Result<_, _>>()?;
            let (d, verdict) = s.divisor()?.certify(fs)?;
            let Saito::Free(basis) = verdict else {
                return Ok(Report::new("check-logsymplectic", false, "no Saito frame: the fields are not a basis"));
            };
            let fr = Frame::saito(&chart, &basis)?;
            (d, fr)
        }
    };
    match SymplecticData::assess(chart, div, om, fr) {
        Ok(sd) => {
            let det = p(s, sd.det());
            Ok(if sd.is_nondegenerate() {
                Report::new("check-logsymplectic", true, format!("log symplectic: det = {det}"))
            } else {
                Report::new("check-logsymplectic", false, format!("degenerate: det = {det} is not a unit"))
            })
        }
        Err(e @ (Error::NotClosed(_) | Error::OddDimension(_))) => {
            Ok(Report::new("check-logsymplectic", false, format!("not log symplectic: {e}")))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn hamiltonian(s: &SessionManifest, arg: &FormArg, f: &str, tilde: bool) -> Out {
    let sd = symplectic(s, arg)?;
    let fp = func(s, f)?;
    let h = poisson::hamiltonian(&sd, &fp)?;
    let mut r = Report::new("hamiltonian", true, format!("delta_f = {}", v(s, &h.field)));
    r.push("f", p(s, &fp));
    if tilde {
        r.push("reduced", v(s, &poisson::tilde_hamiltonian(&sd, &fp)?));
    }
    Ok(r)
}

pub fn bracket(s: &SessionManifest, arg: &FormArg, f: &str, g: &str) -> Out {
    let sd = symplectic(s, arg)?;
    let b = poisson::bracket(&sd, &func(s, f)?, &func(s, g)?)?;
    Ok(Report::new("bracket", true, format!("{{f, g}} = {}", p(s, &b))).with("f", f).with("g", g))
}

pub fn singbracket(s: &SessionManifest, arg: &FormArg, f: &str, g: &str) -> Out {
    let sd = symplectic(s, arg)?;
    let (fp, gp) = (func(s, f)?, func(s, g)?);
    let membership = (poisson::in_ideal(&sd, &fp), poisson::in_ideal(&sd, &gp));
    let b = poisson::sing_bracket(&sd, &fp, &gp, membership)?;
    let divided = match membership {
        (true, true) => "f*g",
        (true, false) => "f",
        (false, true) => "g",
        (false, false) => "1",
    };
    Ok(Report::new("singbracket", true, format!("{{f, g}}_sing = {}", p(s, &b))).with("divided by", divided))
}

pub fn jacobi(s: &SessionManifest, arg: &FormArg, f: &str, g: &str, h: &str) -> Out {
    let sd = symplectic(s, arg)?;
    let j = poisson::jacobi(&sd, &func(s, f)?, &func(s, g)?, &func(s, h)?)?;
    Ok(if j.is_zero() {
        Report::new("jacobi", true, "holds: jacobiator = 0")
    } else {
        Report::new("jacobi", false, format!("fails: jacobiator = {}", p(s, &j)))
    })
}

pub fn identities(s: &SessionManifest, arg: &FormArg, u: &str, vv: &str, a: &str, b: &str) -> Out {
    let sd = symplectic(s, arg)?;
    let rep = poisson::verify_identities(&sd, &func(s, u)?, &func(s, vv)?, &func(s, a)?, &func(s, b)?)?;
    let holds = rep.holds();
    let failing: Vec<&str> = holds.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let mut r = if failing.is_empty() {
        Report::new("identities", true, "all identities hold")
    } else {
        Report::new("identities", false, format!("defects in {}", failing.join(" ")))
    };
    r.push("i", w(s, &rep.i));
    r.push("ii", rat(s, &rep.ii));
    r.push("iii", p(s, &rep.iii));
    r.push("iv", v(s, &rep.iv));
    r.push("v", v(s, &rep.v));
    r.push("jacobi", p(s, &rep.jacobi));
    Ok(r)
}

fn op(s: &SessionManifest, fld: &str, mult: &str) -> Result<LogDiffOp1<Scalar>, Failure> {
    Ok(LogDiffOp1::new(s.chart(), field(s, fld)?, func(s, mult)?)?)
}

pub fn symbol(s: &SessionManifest, fld: &str, mult: &str, expect: Option<&str>) -> Out {
    let phi = op(s, fld, mult)?;
    let mut r = Report::new("symbol", true, format!("symbol = {}", v(s, phi.symbol())));
    if let Some(l) = expect {
        match diffop::atiyah_check(s.chart(), &phi, &field(s, l)?) {
            Atiyah::Admissible => r.push("anchor", "admissible"),
            Atiyah::Violation { coordinate, symbol, expected } => {
                r.passed = false;
                r.verdict = format!(
                    "not admissible: symbol gives {} on {}, expected {}",
                    p(s, &symbol),
                    name(s, coordinate),
                    p(s, &expected)
                );
            }
        }
    }
    Ok(r)
}

pub fn decompose(s: &SessionManifest, c: &str, fld: &str, mult: &str) -> Out {
    let cn = conn(s, c)?;
    let phi = op(s, fld, mult)?;
    let (delta, m) = diffop::decompose(s.chart(), &phi, &cn)?;
    let split = diffop::splitting_check(s.chart(), &cn, std::slice::from_ref(&phi))?;
    let mut r = Report::new("decompose", split.holds(), format!("phi = nabla_({}) + {}", v(s, &delta), p(s, &m)));
    r.push("splitting", if split.holds() { "holds" } else { "fails" });
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
pub fn dirac_test(
    s: &SessionManifest,
    arg: &FormArg,
    c: &str,
    f: &str,
    g: &str,
    alpha: &str,
    cochain: Option<&str>,
    cc: &str,
    wedge: &[String],
) -> Out {
    let sd = symplectic(s, arg)?;
    let cn = conn(s, c)?;
    let (fp, gp) = (func(s, f)?, func(s, g)?);
    let al = scalar(s, alpha)?;
    let chk = diffop::dirac_check(&sd, &cn, &fp, &gp, &al)?;
    let mut r = if chk.holds {
        Report::new("dirac-test", true, "holds")
    } else {
        Report::new("dirac-test", false, format!("fails: defect multiplier {}", p(s, chk.defect.mult())))
    };
    r.push("curvature", w(s, cn.curvature()));
    r.push("expected defect", p(s, &chk.expected));
    if let Some(theta) = cochain {
        let spec = CochainSpec::new(form(s, theta, 1)?, scalar(s, cc)?)?;
        r.push("cochain defect", p(s, &diffop::verify_e15(&sd, &cn, &spec, &fp, &gp, &al)?));
    }
    match wedge {
        [] => {}
        [a, b] => {
            let d = diffop::wedge_defect(&sd, &form(s, a, 1)?, &form(s, b, 1)?, &fp, &gp)?;
            r.push("wedge defect", p(s, &d));
        }
        _ => return Err(Failure("--wedge takes exactly two 1-forms".into())),
    }
    Ok(r)
}

pub fn curvature(s: &SessionManifest, c: &str) -> Out {
    let cn = conn(s, c)?;
    Ok(Report::new("curvature", true, format!("K = {}", w(s, cn.curvature()))).with("sigma", w(s, cn.sigma())))
}

pub fn gauge(s: &SessionManifest, c: &str, tau: &str) -> Out {
    let cn = conn(s, c)?;
    match prequant::gauge(s.chart(), &cn, &form(s, tau, 1)?) {
        Ok(out) => Ok(Report::new("gauge", true, format!("sigma' = {}", w(s, out.sigma())))
            .with("curvature", w(s, out.curvature()))),
        Err(Error::NotClosed(_)) => Ok(Report::new("gauge", false, "not a gauge move: tau is not closed")),
        Err(e) => Err(e.into()),
    }
}

pub fn flat(s: &SessionManifest, c: &str) -> Out {
    let cn = conn(s, c)?;
    Ok(match prequant::is_flat(s.chart(), &cn)? {
        Flatness::Flat { residues, potential } => {
            let mut r = Report::new("flat", true, "flat");
            for (i, a) in residues {
                r.push(format!("residue {}", name(s, i)), print_scalar(&a));
            }
            r.push("potential", p(s, &potential));
            r
        }
        Flatness::NotFlat(k) => Report::new("flat", false, format!("not flat: K = {}", w(s, &k))),
    })
}

pub fn residues(s: &SessionManifest, eta: &str) -> Out {
    let e = form(s, eta, 1)?;
    let mut r = match res_const(s.chart(), &e)? {
        Residues::Constants(list) => {
            let mut r = Report::new("residues", true, "constant residues");
            for (i, a) in list {
                r.push(name(s, i), print_scalar(&a));
            }
            r
        }
        Residues::Nonconstant(list) => {
            let mut r = Report::new("residues", false, "nonconstant residues");
            for (i, a) in list {
                r.push(name(s, i), p(s, &a));
            }
            r
        }
    };
    if let Ok(strata) = stratum_residues(s.chart(), &e) {
        for (i, a) in strata {
            r.push(format!("stratum {}", name(s, i)), p(s, &a));
        }
    }
    Ok(r)
}

pub fn normalize_residues(s: &SessionManifest, c: &str) -> Out {
    let cn = conn(s, c)?;
    match prequant::normalize_residues(s.chart(), &cn) {
        Ok((out, shifts)) => {
            let mut r = Report::new("normalize-residues", true, format!("normalized: sigma = {}", w(s, out.sigma())));
            for (i, k) in shifts {
                r.push(format!("shift {}", name(s, i)), k.to_string());
            }
            Ok(r)
        }
        Err(e @ Error::NotNormalizable(_)) => Ok(Report::new("normalize-residues", false, e.to_string())),
        Err(e) => Err(e.into()),
    }
}

pub fn periods(s: &SessionManifest, arg: &FormArg) -> Out {
    let list = prequant::periods(s.chart(), &omega(s, arg)?)?;
    let mut r = Report::new("periods", true, format!("{} periods", list.len()));
    for per in &list {
        r.push(cycle(s, per), print_scalar(&per.value));
    }
    Ok(r)
}

pub fn integrality(s: &SessionManifest, arg: &FormArg) -> Out {
    Ok(match prequant::integrality_check(s.chart(), &omega(s, arg)?)? {
        Integrality::Integral => Report::new("integrality", true, "integral"),
        Integrality::NonIntegral(per) => Report::new(
            "integrality",
            false,
            format!("non-integral: period {} over {}", print_scalar(&per.value), cycle(s, &per)),
        ),
    })
}

pub fn class(s: &SessionManifest, arg: &FormArg, primitive: bool) -> Out {
    let (cl, prim) = prequant::class_and_primitive(s.chart(), &omega(s, arg)?)?;
    Ok(if primitive {
        Report::new("primitive", true, format!("primitive = {}", w(s, &prim))).with("class", w(s, &cl))
    } else {
        Report::new("class", true, format!("class = {}", w(s, &cl))).with("exact", if cl.is_zero() { "yes" } else { "no" })
    })
}

pub fn prequantize(s: &SessionManifest, arg: &FormArg) -> Out {
    let rep = prequant::prequantize(s.chart(), &omega(s, arg)?);
    let mut r = match rep.verdict {
        Verdict::ConnectionConstructed => Report::new(
            "prequantize",
            true,
            format!("connection constructed: sigma = {}", w(s, rep.connection.as_ref().expect("connection").sigma())),
        ),
        Verdict::PrequantizableGlobally => Report::new(
            "prequantize",
            true,
            "integral: prequantizable globally, class not exact on this chart",
        ),
        Verdict::NonIntegral => {
            let per = rep.witness.as_ref().expect("witness");
            Report::new(
                "prequantize",
                false,
                format!("non-integral: period {} over {}", print_scalar(&per.value), cycle(s, per)),
            )
        }
        Verdict::NotSymplectic => Report::new(
            "prequantize",
            false,
            format!("not symplectic: {}", rep.obstruction.clone().unwrap_or_default()),
        ),
    };
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.push("closed", yes(rep.closed));
    r.push("even dimension", yes(rep.even_dimension));
    r.push("nondegenerate", yes(rep.nondegenerate));
    for per in &rep.periods {
        r.push(format!("period {}", cycle(s, per)), print_scalar(&per.value));
    }
    if let Some(cl) = &rep.class {
        r.push("class", w(s, cl));
    }
    if let Some(pr) = &rep.exact_part_primitive {
        r.push("primitive", w(s, pr));
    }
    for (i, res) in &rep.residues {
        r.push(format!("residue {}", name(s, *i)), p(s, res));
    }
    for (i, k) in &rep.normalized_shifts {
        r.push(format!("shift {}", name(s, *i)), k.to_string());
    }
    if let Some(c) = &rep.connection {
        r.push("curvature", w(s, c.curvature()));
    }
    r.push("caveat", rep.lct_caveat.clone());
    Ok(r)
}

pub fn weights(s: &SessionManifest, f: Option<&str>) -> Out {
    let h = match f {
        Some(t) => func(s, t)?,
        None => s.divisor()?.h().clone(),
    };
    if h.is_zero() {
        return Err(Failure("weights of the zero polynomial".into()));
    }
    Ok(match divisor::weighted_homogeneous(&h) {
        Some(wt) => {
            let list: Vec<String> = wt.weights.iter().map(|x| x.to_string()).collect();
            Report::new("weights", true, format!("weighted homogeneous: weights ({}), degree {}", list.join(", "), wt.degree))
        }
        None => Report::new("weights", false, "none: not weighted homogeneous"),
    }
    .with("h", p(s, &h)))
}
