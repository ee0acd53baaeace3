//! Report rendering: one JSON value per command, printed either as
//! machine-readable JSON or as indented `key: value` lines with identical
//! content.

use serde_json::Value;

pub fn print(value: &Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print_human(value, 0);
    }
}

fn is_scalar(v: &Value) -> bool {
    matches!(v, Value::Null | Value::Bool(_) | Value::Number(_) | Value::String(_))
}

fn scalar_string(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => unreachable!("not a scalar"),
    }
}

fn print_human(value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                if is_scalar(v) {
                    println!("{pad}{key}: {}", scalar_string(v));
                } else if let Value::Array(items) = v {
                    if items.iter().all(is_scalar) {
                        let joined: Vec<String> = items.iter().map(scalar_string).collect();
                        println!("{pad}{key}: {}", joined.join(", "));
                    } else {
                        println!("{pad}{key}:");
                        for item in items {
                            print_human_item(item, indent + 1);
                        }
                    }
                } else {
                    println!("{pad}{key}:");
                    print_human(v, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                print_human_item(item, indent);
            }
        }
        other => println!("{pad}{}", scalar_string(other)),
    }
}

fn print_human_item(item: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if is_scalar(item) {
        println!("{pad}- {}", scalar_string(item));
    } else if let Value::Object(map) = item {
        let mut first = true;
        for (key, v) in map {
            let lead = if first { format!("{pad}- ") } else { format!("{pad}  ") };
            first = false;
            if is_scalar(v) {
                println!("{lead}{key}: {}", scalar_string(v));
            } else if let Value::Array(items) = v {
                if items.iter().all(is_scalar) {
                    let joined: Vec<String> = items.iter().map(scalar_string).collect();
                    println!("{lead}{key}: {}", joined.join(", "));
                } else {
                    println!("{lead}{key}:");
                    for sub in items {
                        print_human_item(sub, indent + 2);
                    }
                }
            } else {
                println!("{lead}{key}:");
                print_human(v, indent + 2);
            }
        }
    } else {
        println!("{pad}-");
        print_human(item, indent + 1);
    }
}
