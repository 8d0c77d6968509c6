fn main() {
    println!("rexenum");
}
