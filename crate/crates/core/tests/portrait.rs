use kernelflow_core::forms::{field_of_form, OneForm};
use kernelflow_core::parse_expr;
use kernelflow_core::portrait::{self, Poly, PolyField, PortraitSpec, Window};

fn poly(s: &str) -> Poly {
    Poly::from_jet(&parse_expr(s, 12).unwrap())
}

fn exact_field(g: &str) -> PolyField {
    PolyField::from_field(&field_of_form(&OneForm::exact(&parse_expr(g, 13).unwrap())))
}

#[test]
fn first_integral_is_conserved() {
    let g = "x^3/3 - x^2/2 + y^2/2";
    let x = exact_field(g).scale(&poly("x + y^2"));
    let spec = PortraitSpec::new(Window::square(0.5).unwrap());
    let gp = poly(g);
    for t in portrait::integrate(&x, &spec) {
        let g0 = gp.eval(t.samples[0][1], t.samples[0][2]);
        for q in t.points() {
            assert!((gp.eval(q[0], q[1]) - g0).abs() <= 1e-5);
        }
    }
}

#[test]
fn equilibria_are_zeros_of_the_field() {
    let f = poly("y + 0.1 - x^2");
    let xa = PolyField::from_field(&field_of_form(&OneForm::darboux(12)));
    let spec = PortraitSpec::new(Window::square(0.5).unwrap());
    let scene = portrait::scene(&f, &xa, &spec);
    let x = xa.scale(&f);
    let tol = spec.cell_diagonal();
    for line in scene.equilibria.iter().chain(&scene.singular) {
        for q in line {
            let v = x.eval(*q);
            assert!(v[0].hypot(v[1]) < tol, "{q:?} -> {v:?}");
        }
    }
}

#[test]
fn trajectories_stay_in_the_window() {
    let x = PolyField::new(poly("1 + y"), poly("x - y^2"));
    let spec = PortraitSpec::new(Window::new(0.4, 0.3).unwrap());
    for t in portrait::integrate(&x, &spec) {
        for q in t.points() {
            assert!(q[0].abs() <= 0.4 + 1e-12 && q[1].abs() <= 0.3 + 1e-12, "{q:?}");
        }
        assert!(t.samples.windows(2).all(|w| w[0][0] < w[1][0]));
    }
}

#[test]
fn reversing_the_field_reverses_time() {
    let x = PolyField::new(poly("-y"), poly("x + x^2"));
    let minus = x.scale(&poly("-1"));
    let spec = PortraitSpec::new(Window::square(0.5).unwrap());
    let seed = [0.1, 0.05];
    let fwd = portrait::trajectory_through(&x, seed, &spec);
    let bwd = portrait::trajectory_through(&minus, seed, &spec);
    let mut a: Vec<[f64; 2]> = fwd.points().collect();
    let b: Vec<[f64; 2]> = bwd.points().collect();
    a.reverse();
    assert_eq!(a.len(), b.len());
    for (p, q) in a.iter().zip(&b) {
        assert!((p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9);
    }
}
