"""Command line front end: run the engine, store results, print tables.

Storage is line-oriented: a fixed header line followed by one JSON
record per line, so files can be appended to, concatenated, and
diffed.  Field elements are written as comma-separated base-p digits
(lowest power of the field generator first) and polynomials as integer
coefficient lists in ascending degree.
"""

import argparse
import dataclasses
import json
import sys

from .dirichlet import char_eval, legendre_character, trivial_character
from .engine import AlgebraData, EngineOptions, hecke_algebras
from .ff import Poly, embed_field, make_field, set_default_seed
from .forms import Quintic, a5_form, dihedral_forms
from .linalg import kernel, poly_eval_matrix
from .localalg import AffineTuple

STORAGE_FORMAT = "heckealg-algebra-data"
STORAGE_VERSION = 1

_HEADER = json.dumps({"format": STORAGE_FORMAT, "version": STORAGE_VERSION},
                     sort_keys=True, separators=(",", ":"))
_RULE = "-" * 27

DEFAULT_COLUMNS = (
    ("level", "Level"),
    ("weight", "Wt"),
    ("residue_degree", "ResD"),
    ("dimension", "Dim"),
    ("embedding_dimension", "EmbDim"),
    ("nilpotency_order", "NilO"),
    ("gorenstein_defect", "GorDef"),
    ("number_gen_used", "\\#Ops"),
    ("sturm_prime_count", "\\#(p$<$HB)"),
    ("image_name", "Gp"),
)


# ---------------------------------------------------------------------------
# storage

def _element_str(x):
    return ",".join(str(d) for d in x.coeffs)


def _element_from_str(field, text):
    digits = [int(part) for part in text.split(",")]
    if len(digits) != field.k:
        raise ValueError("element %r has %d digits, the field wants %d"
                         % (text, len(digits), field.k))
    return field.element(digits)


_INT_FIELDS = (
    "level", "weight", "characteristic", "base_field_degree",
    "character_order", "character_conductor", "algebra_field_degree",
    "residue_degree", "dimension", "gorenstein_defect",
    "embedding_dimension", "nilpotency_order", "number_gen_used",
    "sturm_prime_count",
)
_BOOL_FIELDS = ("stop_certified", "torsion_warning")


def record_to_line(rec: AlgebraData) -> str:
    """One self-contained JSON line for an AlgebraData record."""
    obj = {name: int(getattr(rec, name)) for name in _INT_FIELDS}
    for name in _BOOL_FIELDS:
        obj[name] = bool(getattr(rec, name))
    obj["image_name"] = rec.image_name
    obj["character_generator_values"] = [
        _element_str(x) for x in rec.character_generator_values]
    obj["defining_polynomial"] = (
        None if rec.defining_polynomial is None
        else [int(c) for c in rec.defining_polynomial])
    rel = rec.relations
    obj["relations"] = [
        rel.field_degree, rel.embedding_dimension, rel.nilpotency_order,
        [[[list(alpha), list(coeffs)] for alpha, coeffs in terms]
         for terms in rel.relations]]
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def line_to_record(line: str) -> AlgebraData:
    """Inverse of record_to_line."""
    obj = json.loads(line)
    base = make_field(obj["characteristic"], obj["base_field_degree"])
    values = tuple(_element_from_str(base, text)
                   for text in obj["character_generator_values"])
    fd, e, n, raw = obj["relations"]
    rels = tuple(tuple((tuple(alpha), tuple(coeffs))
                       for alpha, coeffs in terms)
                 for terms in raw)
    poly = obj["defining_polynomial"]
    kwargs = {name: int(obj[name]) for name in _INT_FIELDS}
    for name in _BOOL_FIELDS:
        kwargs[name] = bool(obj[name])
    return AlgebraData(
        character_generator_values=values,
        relations=AffineTuple(fd, e, n, rels),
        image_name=obj["image_name"],
        defining_polynomial=None if poly is None else tuple(poly),
        **kwargs)


def store(path, records):
    """Append records to path, writing the header line first when new."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            first = handle.readline().strip()
    except FileNotFoundError:
        first = ""
    if first and first != _HEADER:
        raise ValueError("%s is not a storage file (unexpected header)"
                         % path)
    with open(path, "a", encoding="utf-8") as handle:
        if not first:
            handle.write(_HEADER + "\n")
        for rec in records:
            handle.write(record_to_line(rec) + "\n")


def recover(path):
    """Records stored in path, in file order."""
    records = []
    seen_any = False
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, 1):
            seen_any = True
            line = line.strip()
            if number == 1:
                if line != _HEADER:
                    raise ValueError("line 1: expected the storage header")
                continue
            if not line:
                continue
            try:
                records.append(line_to_record(line))
            except (ValueError, KeyError, TypeError, IndexError) as exc:
                raise ValueError("line %d: %s" % (number, exc)) from exc
    if not seen_any:
        raise ValueError("line 1: expected the storage header")
    return records


# ---------------------------------------------------------------------------
# reports

def print_summary(records) -> str:
    """The eight-line block per record, each closed by a dash rule."""
    lines = []
    for rec in records:
        lines += [
            "Level %d" % rec.level,
            "Weight %d" % rec.weight,
            "Characteristic %d" % rec.characteristic,
            "Gorenstein defect %d" % rec.gorenstein_defect,
            "Dimension %d" % rec.dimension,
            "Number of operators used %d" % rec.number_gen_used,
            "Primes lt Hecke bound %d" % rec.sturm_prime_count,
            "Residue degree %d" % rec.residue_degree,
            _RULE,
        ]
    return "\n".join(lines) + ("\n" if lines else "")


def latex_table(records, path, columns=None) -> str:
    """Write a longtable of the records to path and return the path.

    columns is an ordered sequence of (accessor, header) pairs, the
    accessors being AlgebraData field names.  image_name cells are set
    in math mode, so a record without one renders as an empty $$ cell;
    None values render as empty cells.
    """
    cols = tuple(columns) if columns is not None else DEFAULT_COLUMNS
    known = {f.name for f in dataclasses.fields(AlgebraData)}
    for accessor, _ in cols:
        if accessor not in known:
            raise ValueError("unknown accessor %r" % accessor)
    out = [
        "\\begin{longtable}{||%s||}" % "|".join("c" for _ in cols),
        "\\hline",
        " & ".join(header for _, header in cols) + " \\\\",
        "\\hline\\endhead\\hline\\endfoot\\hline\\hline\\endlastfoot",
    ]
    for rec in records:
        cells = []
        for accessor, _ in cols:
            value = getattr(rec, accessor)
            if accessor == "image_name":
                cells.append("$%s$" % value)
            else:
                cells.append("" if value is None else str(value))
        out.append(" & ".join(cells) + " \\\\")
    out.append("\\end{longtable}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(out) + "\n")
    return path


# ---------------------------------------------------------------------------
# the Eisenstein filter

def _carries_eisenstein(data, opdict, character, weight):
    """Whether 1 + chi(l) l^(k-1) is an eigenvalue at every good prime used."""
    level, p = data.level, data.characteristic
    good = [l for l in sorted(opdict) if l != p and level % l != 0]
    if not good:
        return False
    fld = opdict[good[0]].field
    try:
        emb = embed_field(character.field, fld)
    except ValueError:
        return False
    for l in good:
        mat = opdict[l]
        scalar = fld.one() + emb(char_eval(character, l)) * (
            fld.from_int(l % p) ** (weight - 1))
        shifted = poly_eval_matrix(Poly(fld, [-scalar, fld.one()]), mat)
        if kernel(shifted).dim == 0:
            return False
    return True


def _drop_eisenstein(result, character, weight):
    datas, bases, space, bcs, ops = result
    keep = [i for i, d in enumerate(datas)
            if not _carries_eisenstein(d, ops[i], character, weight)]
    return ([datas[i] for i in keep], [bases[i] for i in keep], space,
            [bcs[i] for i in keep], [ops[i] for i in keep])


# ---------------------------------------------------------------------------
# argument helpers

def _parse_char_field(text):
    if "^" in text:
        p, _, m = text.partition("^")
    else:
        p, m = text, "1"
    return make_field(int(p), int(m))


def _parse_ints(text):
    return tuple(int(part) for part in text.split(",") if part.strip())


def _parse_columns(text):
    cols = []
    for part in text.split(","):
        accessor, sep, header = part.partition("=")
        if not sep:
            raise ValueError(
                "column %r is not of the form accessor=Header" % part)
        cols.append((accessor.strip(), header.strip()))
    return tuple(cols)


def _engine_options(args):
    return EngineOptions(
        user_bound=args.user_bound,
        test_sequence=_parse_ints(args.test_sequence),
        dimension_factor=args.dimension_factor,
        ms_space=args.ms_space,
        degree_bound=args.degree_bound,
        force_local=args.force_local,
    )


def _emit(args, result, character, weight):
    """Shared tail of the computing commands: filter, print, store."""
    if args.drop_eisenstein:
        result = _drop_eisenstein(result, character, weight)
    datas = result[0]
    sys.stdout.write(print_summary(datas))
    if args.file:
        store(args.file, datas)
    return 0 if all(d.stop_certified for d in datas) else 2


# ---------------------------------------------------------------------------
# commands

def _cmd_compute(args):
    field = _parse_char_field(args.char_field)
    if args.legendre:
        character = legendre_character(args.level, field)
    else:
        character = trivial_character(args.level, field)
    result = hecke_algebras(character, args.weight,
                            options=_engine_options(args))
    return _emit(args, result, character, args.weight)


def _cmd_dihedral(args):
    specs = dihedral_forms(
        args.level,
        list_of_primes=_parse_ints(args.primes) if args.primes else (),
        bound=args.bound,
        quad_disc=args.quad_disc,
        completely_split=args.completely_split,
    )
    if not args.run:
        for spec in specs:
            print("%d %d %d %s" % (spec.level, spec.weight,
                                   spec.characteristic, spec.image_name))
        return 0
    code = 0
    for spec in specs:
        result = hecke_algebras(spec, options=_engine_options(args))
        code = max(code, _emit(args, result, spec.character, spec.weight))
    return code


def _cmd_a5(args):
    quintic = Quintic(_parse_ints(args.poly), level=args.level)
    spec = a5_form(quintic)
    if not args.run:
        character = spec.character
        print("Level %d" % spec.level)
        print("Character modulus %d order %d conductor %d"
              % (character.modulus, character.order(), character.conductor()))
        print("Base field GF(%d^%d)"
              % (character.field.p, character.field.k))
        return 0
    result = hecke_algebras(spec, options=_engine_options(args))
    return _emit(args, result, spec.character, spec.weight)


def _cmd_store(args):
    store(args.file, recover(args.input))
    return 0


def _cmd_recover(args):
    records = recover(args.file)
    sys.stdout.write(_HEADER + "\n")
    for rec in records:
        sys.stdout.write(record_to_line(rec) + "\n")
    return 0


def _cmd_print(args):
    sys.stdout.write(print_summary(recover(args.file)))
    return 0


def _cmd_latex(args):
    columns = _parse_columns(args.columns) if args.columns else None
    latex_table(recover(args.file), args.output, columns)
    return 0


# ---------------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 3."""

    def error(self, message):
        self.exit(3, "%s: error: %s\n" % (self.prog, message))


def _build_parser():
    parser = _Parser(prog="heckealg",
                     description="Local factors of mod-p Hecke algebras.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    run_opts = _Parser(add_help=False)
    run_opts.add_argument("--user-bound", type=int, default=0,
                          help="override the Hecke bound on operators")
    run_opts.add_argument("--test-sequence", default="",
                          help="comma-separated primes to use first")
    run_opts.add_argument("--dimension-factor", type=int, default=0,
                          choices=(0, 1, 2))
    run_opts.add_argument("--ms-space", default="full",
                          choices=("full", "plus", "minus"))
    run_opts.add_argument("--degree-bound", type=int, default=0,
                          help="skip factors above this residue degree")
    run_opts.add_argument("--force-local", action="store_true")
    run_opts.add_argument("--drop-eisenstein", action="store_true",
                          help="drop factors carrying the Eisenstein "
                               "eigensystem at every good prime used")
    run_opts.add_argument("--file", help="storage file to append results to")
    run_opts.add_argument("--seed", type=int,
                          help="seed for factorization randomness")

    compute = sub.add_parser("compute", parents=[run_opts],
                             help="factor one Hecke algebra")
    compute.add_argument("--level", type=int, required=True)
    compute.add_argument("--weight", type=int, required=True)
    compute.add_argument("--char-field", required=True, metavar="P[^M]",
                         help="coefficient field, e.g. 2 or 2^4")
    compute.add_argument("--legendre", action="store_true",
                         help="use the quadratic character mod the level "
                              "instead of the trivial one")
    compute.set_defaults(func=_cmd_compute)

    dihedral = sub.add_parser("dihedral", parents=[run_opts],
                              help="dihedral systems at a level")
    dihedral.add_argument("--level", type=int, required=True)
    dihedral.add_argument("--primes", default="",
                          help="comma-separated characteristics to try")
    dihedral.add_argument("--bound", type=int, default=100,
                          help="try all characteristics up to this bound")
    dihedral.add_argument("--completely-split", action="store_true",
                          help="keep only systems with the characteristic "
                               "split in the quadratic field")
    dihedral.add_argument("--quad-disc", type=int, default=0,
                          help="discriminant override (default: -level)")
    dihedral.add_argument("--run", action="store_true",
                          help="run the engine on every system found")
    dihedral.set_defaults(func=_cmd_dihedral)

    a5 = sub.add_parser("a5", parents=[run_opts],
                        help="icosahedral form attached to a quintic")
    a5.add_argument("--poly", required=True, metavar="C0,...,C5",
                    help="quintic coefficients, constant term first")
    a5.add_argument("--level", type=int, default=0,
                    help="level override when the conductor is not wanted")
    a5.add_argument("--run", action="store_true",
                    help="run the engine on the form")
    a5.set_defaults(func=_cmd_a5)

    cmd_store = sub.add_parser("store", help="append records to a file")
    cmd_store.add_argument("--file", required=True,
                           help="storage file to append to")
    cmd_store.add_argument("--input", required=True,
                           help="storage file to read records from")
    cmd_store.set_defaults(func=_cmd_store)

    cmd_recover = sub.add_parser("recover",
                                 help="re-emit a storage file canonically")
    cmd_recover.add_argument("--file", required=True)
    cmd_recover.set_defaults(func=_cmd_recover)

    cmd_print = sub.add_parser("print", help="human-readable summary")
    cmd_print.add_argument("--file", required=True)
    cmd_print.set_defaults(func=_cmd_print)

    cmd_latex = sub.add_parser("latex", help="write a LaTeX longtable")
    cmd_latex.add_argument("--file", required=True)
    cmd_latex.add_argument("--output", required=True)
    cmd_latex.add_argument("--columns",
                           help="accessor=Header pairs, comma-separated")
    cmd_latex.set_defaults(func=_cmd_latex)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is not None:
        set_default_seed(args.seed)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
