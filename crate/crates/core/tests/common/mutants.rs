//! Single-edit mutants of corpus sources, each designated to produce
//! exactly one diagnostic kind in the edited module.

use mglite_core::corpus::check_module;
use mglite_core::modsys::Flattener;
use mglite_core::DiagKind;

use super::edited;

pub struct Mutant {
    pub name: &'static str,
    pub file: &'static str,
    pub find: &'static str,
    pub replace: &'static str,
    pub module: &'static str,
    pub expect: &'static [DiagKind],
}

use DiagKind::*;

pub const MUTANTS: &[Mutant] = &[
    Mutant {
        name: "update param made obs",
        file: "building_blocks.mg",
        find: "procedure timesThreeUpdateRef(upd i: int)",
        replace: "procedure timesThreeUpdateRef(obs i: int)",
        module: "ExampleProgram",
        expect: &[WriteToObs],
    },
    Mutant {
        name: "relaxed map made obs",
        file: "dijkstra.mg",
        find: "upd q: PriorityQueue, upd a: VertexCostMap) {\n    var v = tgt(e, g);",
        replace: "upd q: PriorityQueue, obs a: VertexCostMap) {\n    var v = tgt(e, g);",
        module: "Dijkstra",
        expect: &[WriteToObs],
    },
    Mutant {
        name: "obs param assigned",
        file: "building_blocks.mg",
        find: "  function timesThree(i: int): int {",
        replace: "  procedure bump(obs i: int) { i = add(i, i); }\n  function timesThree(i: int): int {",
        module: "ExampleProgram",
        expect: &[WriteToObs],
    },
    Mutant {
        name: "obs param passed for update",
        file: "building_blocks.mg",
        find: "  function timesThree(i: int): int {",
        replace: "  procedure bump(obs i: int) { call timesThreeUpdateRef(i); }\n  function timesThree(i: int): int {",
        module: "ExampleProgram",
        expect: &[WriteToObs],
    },
    Mutant {
        name: "out param never assigned",
        file: "building_blocks.mg",
        find: "  function timesThree(i: int): int {",
        replace: "  procedure copyOut(obs i: int, out j: int) { }\n  function timesThree(i: int): int {",
        module: "ExampleProgram",
        expect: &[OutNotAssigned],
    },
    Mutant {
        name: "out param assigned on one branch",
        file: "building_blocks.mg",
        find: "  function timesThree(i: int): int {",
        replace: "  procedure copyOut(obs i: int, out j: int) { if i == i then { j = i; }; }\n  function timesThree(i: int): int {",
        module: "ExampleProgram",
        expect: &[OutNotAssigned],
    },
    Mutant {
        name: "update param made out",
        file: "building_blocks.mg",
        find: "procedure timesThreeUpdateRef(upd i: int)",
        replace: "procedure timesThreeUpdateRef(out i: int)",
        module: "ExampleProgram",
        expect: &[ReadBeforeAssign],
    },
    Mutant {
        name: "function value dropped",
        file: "building_blocks.mg",
        find: "    value mutable_i;\n",
        replace: "",
        module: "ExampleProgram",
        expect: &[MissingValueOnPath],
    },
    Mutant {
        name: "shortest paths value dropped",
        file: "dijkstra.mg",
        find: "    value a;\n",
        replace: "",
        module: "Dijkstra",
        expect: &[MissingValueOnPath],
    },
    Mutant {
        name: "loop condition valued on one branch",
        file: "generic_bfs_utils.mg",
        find: "{ value !isEmptyQueue(q); }",
        replace: "{ if isEmptyQueue(q) then { value !isEmptyQueue(q); }; }",
        module: "GenericBFSUtils",
        expect: &[MissingValueOnPath],
    },
    Mutant {
        name: "unpack overloaded on return",
        file: "generic_bfs_utils.mg",
        find: "  procedure breadthFirstVisit(",
        replace: "  function edgeIterUnpack(it: OutEdgeIterator): VertexDescriptor;\n  procedure breadthFirstVisit(",
        module: "GenericBFSUtils",
        expect: &[AmbiguousReturnOverload],
    },
    Mutant {
        name: "front overloaded on return",
        file: "generic_bfs_utils.mg",
        find: "  procedure breadthFirstVisit(",
        replace: "  function front(q: Queue): Color;\n  procedure breadthFirstVisit(",
        module: "GenericBFSUtils",
        expect: &[AmbiguousReturnOverload],
    },
    Mutant {
        name: "cost sum overloaded on return",
        file: "dijkstra.mg",
        find: "  predicate improves(",
        replace: "  function plus(a: Cost, b: Cost): Predicate;\n  predicate improves(",
        module: "Dijkstra",
        expect: &[AmbiguousReturnOverload],
    },
];

/// One line per mutant whose diagnostics differ from its designation.
pub fn failures() -> Vec<String> {
    let mut bad = Vec::new();
    for m in MUTANTS {
        let env = edited(m.file, m.find, m.replace);
        let mut fl = Flattener::new(&env);
        let d = check_module(m.module, &mut fl);
        if d.kinds() != m.expect {
            bad.push(format!(
                "{}: expected {:?}, got {}",
                m.name,
                m.expect,
                d.render(env.sources())
            ));
        }
    }
    bad
}
