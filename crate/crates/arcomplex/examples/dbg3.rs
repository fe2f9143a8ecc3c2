use arcomplex::complex::{build_ball, BallOptions, ComplexKind};
use arcomplex::coords::{class_equal, VertexClass};
use arcomplex::intersect::intersection_number;
use arcomplex::quasi::*;
use arcomplex::surface::Surface;
use arcomplex::triangulation::neighborhood_boundary;
use arcomplex::Limits;

fn main() {
    let lim = Limits::default();
    let ball = build_ball(Surface::new(0, 5), ComplexKind::ArcCurve, BallOptions::new(2, 8), &lim).unwrap();
    let reg = ball.registry().unwrap();
    // replicate walk [14, 5, 18, 46, 22, 6]
    let walk = [14usize, 5, 18, 46, 22, 6];
    let path: Vec<VertexClass> = walk.iter().map(|&v| ball.vertices()[v].class.clone()).collect();
    // manual scan
    let i_of = |x: &VertexClass, y: &VertexClass| intersection_number(reg, x, y, &lim).unwrap();
    let mut out: Vec<VertexClass> = vec![path[0].clone()];
    let mut i = 1;
    while i < path.len() {
        let prev = out.last().unwrap().clone();
        println!("step i={i} out_len={} prev={:?}", out.len(), prev.to_json());
        match &path[i] {
            VertexClass::Curve(_) => { out.push(path[i].clone()); i += 1; }
            VertexClass::Arc(a) => {
                let next = &path[i+1];
                if class_equal(&prev, next) || (!class_equal(&prev, next) && i_of(&prev, next) == 0) {
                    println!("  drop arc");
                    i += 1; continue;
                }
                match next {
                    VertexClass::Curve(_) => {
                        let mut found = false;
                        for z in neighborhood_boundary(reg, a).unwrap() {
                            let zc = VertexClass::Curve(z);
                            println!("  case2 z={:?} i(z,prev)={} i(z,next)={}", zc.to_json(), i_of(&zc, &prev), i_of(&zc, next));
                            if !class_equal(&zc, &prev) && i_of(&zc, &prev) == 0 && !class_equal(&zc, next) && i_of(&zc, next) == 0 {
                                out.push(zc); found = true; break;
                            }
                        }
                        if !found { println!("  CASE2 FAILED"); return; }
                        i += 1;
                    }
                    VertexClass::Arc(b) => {
                        let barc = VertexClass::Arc(b.clone());
                        let zs: Vec<VertexClass> = neighborhood_boundary(reg, a).unwrap().into_iter().map(VertexClass::Curve)
                            .filter(|z| class_equal(z, &prev) || i_of(z, &prev) == 0).collect();
                        println!("  case3: |dN(a)|={} zs={}", neighborhood_boundary(reg, a).unwrap().len(), zs.len());
                        for z in neighborhood_boundary(reg, a).unwrap() {
                            let zc = VertexClass::Curve(z);
                            println!("    raw z={:?} i(z,prev)={} i(z,b)={} eq_prev={}", zc.to_json(), i_of(&zc, &prev), i_of(&zc, &barc), class_equal(&zc, &prev));
                        }
                        let mut done = false;
                        for z in &zs {
                            if !class_equal(z, &prev) && i_of(z, &barc) == 0 { out.push(z.clone()); i += 1; done = true; break; }
                        }
                        if !done {
                            let pair = pair_boundaries(reg, a, b, &lim).unwrap();
                            println!("  pair candidates: {}", pair.len());
                            for v in &pair {
                                let vc = VertexClass::Curve(v.clone());
                                for z in &zs {
                                    println!("    v={:?} i(v,z)={} i(v,b)={} v==prev={}", vc.to_json(), i_of(&vc, z), i_of(&vc, &barc), class_equal(&vc, &prev));
                                }
                            }
                            'o: for z in &zs {
                                let zp = class_equal(z, &prev);
                                for v in &pair {
                                    let vc = VertexClass::Curve(v.clone());
                                    if !class_equal(&vc, z) && i_of(&vc, z) == 0 && i_of(&vc, &barc) == 0 && !class_equal(&vc, &prev) {
                                        if !zp { out.push(z.clone()); }
                                        out.push(vc); i += 1; done = true; break 'o;
                                    }
                                }
                            }
                        }
                        if !done { println!("  CASE3 FAILED"); return; }
                    }
                }
            }
        }
    }
    println!("rewrote OK: len {}", out.len()-1);
}
