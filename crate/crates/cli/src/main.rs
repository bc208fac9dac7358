fn main() {
    std::process::exit(cyceq::run(std::env::args_os()));
}
