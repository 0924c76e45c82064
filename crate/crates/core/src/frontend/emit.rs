use std::fmt::Write as _;

use crate::circuit::Circuit;
use crate::scheduler::Schedule;

/// Extended-QASM listing of a schedule, one `// cycle k [type]` block per
/// cycle, plus the JSON schedule document.
pub fn emit_output(schedule: &Schedule) -> (String, String) {
    (schedule_qasm(schedule), schedule.to_json())
}

pub fn schedule_qasm(schedule: &Schedule) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\n");
    let _ = writeln!(s, "// crossbar {0}x{0}", schedule.grid);
    let _ = writeln!(s, "qreg q[{}];", schedule.n);
    for (k, c) in schedule.cycles.iter().enumerate() {
        let _ = writeln!(s, "// cycle {k} [{}]", c.ty);
        for op in &c.ops {
            s.push_str(&op.instr.to_qasm());
            s.push('\n');
        }
    }
    s
}

/// Schedule document back to a [`Schedule`].
pub fn parse_schedule_doc(text: &str) -> Result<Schedule, serde_json::Error> {
    Schedule::from_json(text)
}

/// Plain QASM for a logical circuit; readable by the QASM parser.
pub fn circuit_qasm(circuit: &Circuit) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", circuit.n_qubits);
    for g in &circuit.gates {
        let _ = writeln!(s, "{g};");
    }
    s
}
