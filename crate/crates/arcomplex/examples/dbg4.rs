use arcomplex::complex::{build_ball, BallOptions, ComplexKind};
use arcomplex::coords::{transport, CurveClass, VertexClass};
use arcomplex::intersect::*;
use arcomplex::strands::{Carried};
use arcomplex::surface::Surface;
use arcomplex::triangulation::edge_set_boundary;
use arcomplex::Limits;

fn main() {
    let lim = Limits::default();
    let ball = build_ball(Surface::new(0, 5), ComplexKind::ArcCurve, BallOptions::new(2, 8), &lim).unwrap();
    let reg = ball.registry().unwrap();
    // arc 46's class in the dump: vector [1,0,1,0,0,0,0,0,0] endpoints (2,3)
    let arc = reg.arcs().iter().find(|a| a.vector() == [1,0,1,0,0,0,0,0,0] && a.endpoints() == (2,3)).unwrap();
    let (tid, e) = arc.anchor();
    println!("anchor tri {tid} edge {e}, depth {}", reg.entry(tid).unwrap().depth);
    let comps = edge_set_boundary(&reg.entry(tid).unwrap().tri, &[e]).unwrap();
    println!("{} components", comps.len());
    for comp in comps {
        println!("vector rel anchor: {:?}", comp.vector());
        println!("  entry at anchor edge {e}: {}", comp.vector()[e]);
        // carry to base two ways: strand carrier vs tropical rule
        let carried = reg.carry_to_base(tid, Carried::Strands(comp.clone())).unwrap();
        let v_carrier = match carried { Carried::Strands(s) => s.vector(), _ => panic!() };
        println!("  carrier to base: {v_carrier:?}");
        // tropical: transport the vector back along reversed flips
        let entry = reg.entry(tid).unwrap();
        let mut tris = vec![reg.base().clone()];
        for &f in &entry.flip_path { tris.push(tris.last().unwrap().flip(f).unwrap()); }
        let mut v = comp.vector();
        for (k, &f) in entry.flip_path.iter().enumerate().rev() {
            // transport across unflip of tris[k+1] at f = same max rule on the quad
            v = transport(&v, &tris[k+1], f).unwrap();
        }
        println!("  tropical to base: {v:?}");
        assert_eq!(v, v_carrier, "carrier vs tropical disagree!");
        // now the suspicious pair
        let prev = CurveClass::from_vector(reg.base(), vec![1,0,1,0,1,1,0,1,1]).unwrap();
        let z = CurveClass::from_vector(reg.base(), v_carrier.clone()).unwrap();
        let c1 = overlay_oracle(reg, &VertexClass::Curve(prev.clone()), &VertexClass::Curve(z.clone()), &lim).unwrap();
        println!("  canonical oracle i(prev, z) = {c1}");
        let sprev = class_strands_rel_base(reg, &VertexClass::Curve(prev.clone())).unwrap();
        let sz = class_strands_rel_base(reg, &VertexClass::Curve(z.clone())).unwrap();
        let mut lim2 = lim.clone();
        lim2.max_interleavings = 100_000_000;
        match overlay_min_exhaustive(reg.base(), &sprev, &sz, &lim2) {
            Ok(v) => println!("  exhaustive i(prev, z) = {v}"),
            Err(e) => println!("  exhaustive: {e}"),
        }
        // and i(prev, arc) to confirm
        let ia = intersection_number(reg, &VertexClass::Curve(prev.clone()), &VertexClass::Arc(arc.clone()), &lim).unwrap();
        println!("  i(prev, arc) = {ia}");
    }
}
