//! Driving the command-line front end from code: a batch of fillings solved
//! on worker threads, reported as a versioned JSON document.

fn main() {
    let args =
        ["mgk", "fill", "--g", "2", "--k", "1", "--coeffs", "5/1", "--coeffs", "7/2", "--coeffs", "19/11", "--json"];
    let mut out = Vec::new();
    let code = mgk::cli::run(args, &mut out, &mut std::io::stderr());
    let doc: mgk::cli::Document = serde_json::from_slice(&out).expect("valid JSON");
    if let mgk::cli::Payload::Fill { structures } = &doc.payload {
        for s in structures {
            println!("{:<6} residual {:.1e}  return path {:.12}", s.filling, s.residual, s.return_path_length);
        }
    }
    println!("schema {}, exit code {code}", doc.schema);
}
