"""Command-line entry points for batch analysis and the review service.

Machine output goes to stdout as canonical JSON (or DOT with --dot);
diagnostics go to stderr.  Exit codes: 0 success, 1 validation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .delta import delta_payload, delta_to_dot
from .errors import SafetraceError
from .faulttree import fault_tree_to_dot, minimal_cut_sets
from .propagation import warning_overlay_dot, warning_report, warnings_payload
from .review import AssetToUpdate, Rationale, RationaleKind, ReviewDecision
from .tree import tree_payload, tree_stats, tree_to_dot
from .workspace import ProjectWorkspace, validate_workspace


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _yes_no(value: str) -> bool:
    if value not in ("yes", "no"):
        raise argparse.ArgumentTypeError("expected 'yes' or 'no'")
    return value == "yes"


def _asset_ref(value: str) -> AssetToUpdate:
    kind, sep, asset_id = value.partition(":")
    if not sep or not asset_id:
        raise argparse.ArgumentTypeError("expected KIND:ID, e.g. FaultTree:FT-AIRSPACE")
    return AssetToUpdate(kind, asset_id)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safetrace",
        description="Trace-link analysis between development artifacts and safety assets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run all store and asset validators")
    p.add_argument("workspace", help="workspace directory")

    def add_ws(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workspace", "-w", default=".", help="workspace directory")

    p = sub.add_parser("tree", help="print an artifact tree")
    add_ws(p)
    p.add_argument("--version", required=True, help="snapshot version label")
    p.add_argument("--root", required=True, help="root artifact id")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--stats", action="store_true", help="emit node/depth/type counts")

    p = sub.add_parser("delta", help="compare two versions of a tree")
    add_ws(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--current", required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("propagate", help="compute change warnings across safety assets")
    add_ws(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--current", required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--dot", action="store_true", help="emit the warned-overlay DOT")
    p.add_argument("--report", action="store_true", help="emit the one-line-per-warning report")

    p = sub.add_parser("cutsets", help="print the minimal cut sets of a fault tree")
    add_ws(p)
    p.add_argument("--ft", required=True, help="fault tree id")
    p.add_argument("--dot", action="store_true")

    review = sub.add_parser("review", help="rationale and decision workflow")
    review_sub = review.add_subparsers(dest="review_command", required=True)

    p = review_sub.add_parser("pending", help="changed artifacts still owing a rationale")
    add_ws(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--current", required=True)
    p.add_argument("--root", required=True)

    p = review_sub.add_parser("rationale", help="record a change rationale")
    add_ws(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--current", required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--kind", required=True, choices=["design", "code"])
    p.add_argument("--subject", required=True, help="changed artifact id")
    p.add_argument("--reason", default="", help="design: why the change was made")
    p.add_argument("--alternative", action="append", default=[], dest="alternatives")
    p.add_argument("--argument", action="append", default=[], dest="arguments")
    p.add_argument("--justification", default="", help="code: why the change was made")
    p.add_argument("--explanation", default="", help="code: what the change does")
    p.add_argument("--author", default="")

    p = review_sub.add_parser("close", help="record a verdict and close the review")
    add_ws(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--current", required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--decision", default="", help="close an existing open decision by id")
    p.add_argument("--analyst", default="")
    p.add_argument("--impacts-safety", type=_yes_no, default=False)
    p.add_argument("--additional-mitigations", type=_yes_no, default=False)
    p.add_argument(
        "--update-asset",
        action="append",
        default=[],
        type=_asset_ref,
        dest="assets",
        help="asset to update as KIND:ID (repeatable)",
    )
    p.add_argument("--notes", default="")

    p = sub.add_parser("serve", help="start the HTTP review service")
    add_ws(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except SafetraceError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "validate":
        problems = validate_workspace(args.workspace)
        for problem in problems:
            print(problem)
        print(f"{len(problems)} errors")
        return 1 if problems else 0

    workspace = ProjectWorkspace.load(args.workspace)

    if args.command == "tree":
        tree = workspace.tree(args.version, args.root)
        if args.dot:
            print(tree_to_dot(tree), end="")
        elif args.stats:
            stats = tree_stats(tree)
            _print_json(
                {
                    "schema_version": "1",
                    "node_count": stats.node_count,
                    "depth": stats.depth,
                    "counts_by_type": stats.counts_by_type,
                }
            )
        else:
            _print_json(tree_payload(tree))
        return 0

    if args.command == "delta":
        delta = workspace.delta(args.baseline, args.current, args.root)
        if args.dot:
            print(delta_to_dot(delta), end="")
        else:
            _print_json(delta_payload(delta))
        return 0

    if args.command == "propagate":
        delta = workspace.delta(args.baseline, args.current, args.root)
        ws = workspace.warning_set(args.baseline, args.current, args.root)
        if args.dot:
            print(
                warning_overlay_dot(
                    ws, workspace.fault_trees.values(), workspace.safety_cases.values()
                ),
                end="",
            )
        elif args.report:
            print(warning_report(ws, delta), end="")
        else:
            _print_json(warnings_payload(ws, delta))
        return 0

    if args.command == "cutsets":
        ft = workspace.fault_tree(args.ft)
        if args.dot:
            print(fault_tree_to_dot(ft), end="")
        else:
            cut_sets = sorted(sorted(s) for s in minimal_cut_sets(ft))
            _print_json({"schema_version": "1", "fault_tree": ft.id, "cut_sets": cut_sets})
        return 0

    if args.command == "review":
        return _dispatch_review(args, workspace)

    if args.command == "serve":
        import uvicorn

        from .api import create_app

        uvicorn.run(create_app(workspace), host=args.host, port=args.port)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def _dispatch_review(args: argparse.Namespace, workspace: ProjectWorkspace) -> int:
    delta = workspace.delta(args.baseline, args.current, args.root)
    ws = workspace.warning_set(args.baseline, args.current, args.root)

    if args.review_command == "pending":
        pending = workspace.review.pending_rationales(delta, ws, workspace.hlinks)
        _print_json({"schema_version": "1", "pending": sorted(pending)})
        return 0

    if args.review_command == "rationale":
        kind = RationaleKind.DESIGN_DECISION if args.kind == "design" else RationaleKind.CODE_CHANGE
        rationale = Rationale(
            kind=kind,
            subject_id=args.subject,
            baseline_label=args.baseline,
            current_label=args.current,
            reason=args.reason,
            alternatives=list(args.alternatives),
            arguments=list(args.arguments),
            justification=args.justification,
            explanation=args.explanation,
            author=args.author,
        )
        stored_id = workspace.review.submit_rationale(rationale, delta)
        _print_json({"schema_version": "1", "id": stored_id, "subject": args.subject})
        return 0

    if args.review_command == "close":
        decision_id = args.decision
        if not decision_id:
            decision = ReviewDecision(
                analyst=args.analyst,
                baseline_label=args.baseline,
                current_label=args.current,
                root_id=args.root,
                impacts_safety=args.impacts_safety,
                additional_mitigations_needed=args.additional_mitigations,
                assets_to_update=list(args.assets),
                notes=args.notes,
            )
            decision_id = workspace.review.create_decision(decision)
        notice = workspace.review.close_review(decision_id, delta, ws, workspace.hlinks)
        _print_json(
            {
                "schema_version": "1",
                "decision": decision_id,
                "recipients": notice.recipients,
                "summary": notice.summary,
            }
        )
        return 0

    raise AssertionError(f"unhandled review command {args.review_command}")


if __name__ == "__main__":
    sys.exit(main())
