use arcomplex::coords::CurveClass;
use arcomplex::intersect::overlay_debug;
use arcomplex::strands;
use arcomplex::surface::Surface;
use arcomplex::triangulation::base_triangulation;

fn main() {
    let base = base_triangulation(Surface::new(0, 5)).unwrap();
    let prev = CurveClass::from_vector(&base, vec![1,0,1,0,1,1,0,1,1]).unwrap();
    let z = CurveClass::from_vector(&base, vec![2,1,3,2,1,1,0,1,1]).unwrap();
    let sx = strands::from_curve_vector(&base, prev.vector()).unwrap();
    let sy = strands::from_curve_vector(&base, z.vector()).unwrap();
    println!("{}", overlay_debug(&base, &sx, &sy));
}
