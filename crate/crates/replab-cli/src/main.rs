use replab::discovery::infer_avoided_blocks;
use replab::morphism::MorphismRegistry;
use replab::AvoidanceSpec;

fn main() {
    let reg = MorphismRegistry::builtin();
    let spec_b = AvoidanceSpec::new(4, "5/2+".parse().unwrap()).unwrap();
    let spec_c = AvoidanceSpec::new(7, "7/3+".parse().unwrap()).unwrap();

    let g1 = reg.get("g1").unwrap();
    let r = infer_avoided_blocks(g1, &spec_b, 2);
    let (squares, others): (Vec<_>, Vec<_>) = r.avoided.iter().partition(|w| {
        let s = w.symbols();
        s.len() == 2 && s[0] == s[1]
    });
    println!("g1 avoided squares: {}", squares.len());
    let derived: Vec<String> = others.iter().map(|w| w.to_string()).collect();
    println!("g1 avoided non-square pairs ({}): {:?}", derived.len(), derived);
    let paper = ["01","02","04","05","06","07","10","12","13","17","20","21","24","25","26","27","30","31","32","36","37","40","41","42","43","47","51","54","56","57","60","62","63","64","65","72","73","74","75","76"];
    println!("paper list has {}; derived==paper: {}", paper.len(), derived == paper);

    let h1 = reg.get("h1").unwrap();
    let r = infer_avoided_blocks(h1, &spec_c, 2);
    let (squares, others): (Vec<_>, Vec<_>) = r.avoided.iter().partition(|w| {
        let s = w.symbols();
        s.len() == 2 && s[0] == s[1]
    });
    println!("h1 avoided squares: {}", squares.len());
    let derived: Vec<String> = others.iter().map(|w| w.to_string()).collect();
    println!("h1 avoided non-square pairs ({}): {:?}", derived.len(), derived);
    let paper = ["01","02","10","12","13","20","21","34","42","43"];
    println!("paper list has {}; derived==paper: {}", paper.len(), derived == paper);

    // window-3 lists for the informative report
    let r3 = infer_avoided_blocks(h1, &spec_c, 3);
    let len3: Vec<String> = r3.avoided.iter().filter(|w| w.len() == 3).map(|w| w.to_string()).collect();
    println!("h1 avoided length-3 blocks: {:?} (paper mentions 304)", len3);
}
