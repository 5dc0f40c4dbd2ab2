"""Command-line front end: ``coinpurse {analyze,states,matrix,search}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import combinations

from coinpurse.cashier import CashierRule
from coinpurse.chain import (
    PriceModel,
    build_chain,
    export_chain,
    state_space_for,
    stationary_distribution,
    verify_aperiodic,
    verify_irreducible,
)
from coinpurse.currency import Currency, search_min_average_currency
from coinpurse.errors import CoinpurseError, NoConvergence
from coinpurse.stats import REFERENCES, distribution_distance, lower_bound_check, report, shares_percent
from coinpurse.strategy import STRATEGY_NAMES, StrategySpec, coin_keeper_tally, preset


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    currency: str = "25,10,5,1"
    modulus: int = 100
    strategy: str = "big-spender"
    cashier: str = "minimal-split"
    prices: str | None = None
    tolerance: float = 1e-12
    max_iterations: int = 1_000_000
    format: str = "table"

    def resolve(self) -> tuple[Currency, StrategySpec | None, PriceModel, CashierRule]:
        """Parse into model objects; a UsageError names the field at fault."""
        try:
            currency = Currency.parse(self.currency, self.modulus)
        except ValueError as exc:
            raise UsageError(f"--currency: {exc}") from None
        try:
            cashier = CashierRule.parse(self.cashier)
        except ValueError as exc:
            raise UsageError(f"--cashier: {exc}") from None
        spec, implied = None, None
        if self.strategy != "coin-keeper":
            try:
                spec, implied = preset(self.strategy, currency)
                spec.validate(currency)
            except (CoinpurseError, ValueError) as exc:
                raise UsageError(f"--strategy: {exc}") from None
        try:
            prices = parse_prices(self.prices, currency.modulus) if self.prices else None
        except ValueError as exc:
            raise UsageError(f"--prices: {exc}") from None
        if prices is None:
            prices = PriceModel(tuple(implied)) if implied else PriceModel.uniform(currency.modulus)
        if self.tolerance <= 0:
            raise UsageError("--tolerance: must be positive")
        if self.max_iterations < 1:
            raise UsageError("--max-iterations: must be positive")
        return currency, spec, prices, cashier


def parse_prices(text: str, modulus: int) -> PriceModel:
    key = text.strip().lower()
    if key == "all":
        return PriceModel.uniform(modulus)
    if key.startswith("multiples-of-"):
        return PriceModel.multiples(int(key.removeprefix("multiples-of-")), modulus)
    model = PriceModel(tuple(int(p) for p in key.split(",")))
    bad = [p for p in model.prices if not 0 <= p < modulus]
    if bad:
        raise ValueError(f"prices {bad} outside 0..{modulus - 1}")
    return model


def _config(args) -> RunConfig:
    return RunConfig(args.currency, args.modulus, args.strategy, args.cashier, args.prices,
                     args.tolerance, args.max_iterations, getattr(args, "format", "table"))


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coin_keeper(cfg: RunConfig, currency: Currency, prices: PriceModel, cashier: CashierRule) -> str:
    rates = coin_keeper_tally(currency, cashier, prices.prices)
    shares = shares_percent([float(r) for r in rates])
    if cfg.format == "json":
        doc = {
            "currency": str(currency), "modulus": currency.modulus, "strategy": "coin-keeper",
            "per_transaction": [float(r) for r in rates],
            "per_transaction_exact": [str(r) for r in rates],
            "shares_percent": list(shares),
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"currency {currency} (modulus {currency.modulus}), strategy coin-keeper",
             "coins received per transaction:"]
    for d, r, s in zip(currency.denominations, rates, shares):
        lines.append(f"  {d:>4}: {str(r):>8} = {float(r):.4f}  ({s:.1f}%)")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    cfg = _config(args)
    currency, spec, prices, cashier = cfg.resolve()
    if spec is None:
        _emit(_coin_keeper(cfg, currency, prices, cashier), args.out)
        return 0
    space, matrix = build_chain(currency, spec, prices, cashier)
    irreducible, aperiodic = verify_irreducible(matrix), verify_aperiodic(matrix)
    if not (irreducible and aperiodic):
        print(f"error: chain is not {'irreducible' if not irreducible else 'aperiodic'}; "
              "no unique stationary distribution to report", file=sys.stderr)
        return 3
    dist = stationary_distribution(matrix, cfg.tolerance, cfg.max_iterations)
    rep = report(dist, space, top=args.top)
    extra = {
        "strategy": cfg.strategy,
        "cashier": cashier.value,
        "price_count": len(prices),
        "iterations": dist.iterations,
        "irreducible": irreducible,
        "aperiodic": aperiodic,
        "lower_bound_holds": lower_bound_check(rep, currency),
    }
    if args.compare:
        extra["distance_to_" + args.compare] = distribution_distance(rep.circulation_shares, REFERENCES[args.compare])
    if cfg.format == "json":
        doc = rep.to_json()
        doc.update(extra)
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return 0
    lines = [
        f"currency {currency} (modulus {currency.modulus}), strategy {cfg.strategy}, "
        f"cashier {cashier.value}, {len(prices)} prices",
        f"states {len(space)}, transitions {matrix.nnz}, denominator {matrix.denominator}",
        f"irreducible {irreducible}, aperiodic {aperiodic}, "
        f"residual {dist.residual:.2e} after {dist.iterations} iterations",
        f"expected coins  {_fmt(rep.expected_coins)}",
        f"expected value  {_fmt(rep.expected_value_cents)} cents",
        "per denomination:",
    ]
    for d, x, s in zip(currency.denominations, rep.expected_per_denomination, rep.circulation_shares):
        lines.append(f"  {d:>4}: {_fmt(x)}  ({s:.1f}%)")
    lines.append(f"lower bound e(n) >= g(n): {'holds' if extra['lower_bound_holds'] else 'FAILS'}")
    if args.compare:
        lines.append(f"distance to {args.compare}: {extra['distance_to_' + args.compare]:.3f} points")
    lines.append("most likely states:")
    for state, p in rep.top_states:
        lines.append(f"  {str(state):<28} {p:.5f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_states(args) -> int:
    cfg = _config(args)
    currency, spec, prices, cashier = cfg.resolve()
    if spec is None:
        raise UsageError("--strategy: coin-keeper has no finite state space")
    space = state_space_for(currency, spec, cashier)
    lines = [str(len(space))]
    if args.list:
        lines.extend(str(s) for s in space)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_matrix(args) -> int:
    if not args.out:
        raise UsageError("--out: an output path is required")
    cfg = _config(args)
    currency, spec, prices, cashier = cfg.resolve()
    if spec is None:
        raise UsageError("--strategy: coin-keeper has no finite transition matrix")
    space, matrix = build_chain(currency, spec, prices, cashier)
    try:
        mpath, spath = export_chain(space, matrix, args.out, args.states_out)
    except OSError as exc:
        print(f"error: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1
    print(f"wrote {mpath} (dimension {matrix.dimension}, {matrix.nnz} entries) and {spath}")
    return 0


def _wallet_objective(candidate: Currency, tolerance: float) -> float:
    spec, _ = preset("big-spender", candidate)
    space, matrix = build_chain(candidate, spec)
    return report(stationary_distribution(matrix, tolerance), space).expected_coins


def cmd_search(args) -> int:
    if args.denominations < 1 or args.modulus < 2:
        raise UsageError("--denominations must be >= 1 and --modulus >= 2")
    if args.objective == "change":
        res = search_min_average_currency(args.denominations, args.modulus)
        doc = {"objective": "average-change-coins", "modulus": args.modulus,
               "minimum": str(res.average), "minimum_float": float(res.average),
               "best": str(res.best), "minimizers": [str(c) for c in res.minimizers]}
    else:
        # every currency with the given number of coins and a 1-cent piece; slow at modulus 100
        scored = []
        for rest in combinations(range(args.modulus - 1, 1, -1), args.denominations - 1):
            cand = Currency(rest + (1,), args.modulus)
            scored.append((_wallet_objective(cand, args.tolerance), cand.denominations))
        low = min(s for s, _ in scored)
        winners = sorted(d for s, d in scored if abs(s - low) <= 1e-9)
        doc = {"objective": "big-spender-expected-coins", "modulus": args.modulus, "minimum_float": low,
               "best": ",".join(map(str, winners[0])),
               "minimizers": [",".join(map(str, w)) for w in winners]}
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"minimum {doc.get('minimum', _fmt(doc['minimum_float']))} "
              f"over {args.denominations}-coin currencies below {args.modulus}")
        for c in doc["minimizers"]:
            print(f"  {c}")
    return 0


def _common(p: argparse.ArgumentParser, with_format=True) -> None:
    p.add_argument("--currency", default="25,10,5,1", help="descending denominations, e.g. 25,18,5,1")
    p.add_argument("--modulus", type=int, default=100)
    p.add_argument("--strategy", default="big-spender", choices=STRATEGY_NAMES)
    p.add_argument("--cashier", default="minimal-split", choices=[r.value for r in CashierRule])
    p.add_argument("--prices", default=None, help="'all', 'multiples-of-N' or a comma list")
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--max-iterations", type=int, default=1_000_000)
    if with_format:
        p.add_argument("--format", choices=["table", "json"], default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coinpurse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="stationary wallet statistics for a strategy")
    _common(p)
    p.add_argument("--top", type=int, default=10, help="how many likely states to list")
    p.add_argument("--compare", choices=sorted(REFERENCES), default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("states", help="count (and optionally list) wallet states")
    _common(p, with_format=False)
    p.add_argument("--list", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("matrix", help="export the exact transition matrix and state list")
    _common(p, with_format=False)
    p.add_argument("--out", required=True)
    p.add_argument("--states-out", default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("search", help="search currencies minimising coins")
    p.add_argument("--denominations", type=int, default=4)
    p.add_argument("--modulus", type=int, default=100)
    p.add_argument("--objective", choices=["change", "big-spender"], default="change")
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CoinpurseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
