"""Exact long-run wallet contents for spenders under configurable currencies and strategies."""

from coinpurse.cashier import CashierRule, ChangeDistribution, make_change
from coinpurse.chain import (
    PriceModel,
    StationaryDistribution,
    TransitionMatrix,
    build_chain,
    stationary_distribution,
    verify_aperiodic,
    verify_irreducible,
)
from coinpurse.currency import (
    SHALLIT,
    TOY,
    US,
    CoinMultiset,
    Currency,
    average_change_coins,
    greedy_partition,
    is_greedy_canonical,
    minimal_partitions,
    search_min_average_currency,
)
from coinpurse.strategy import (
    Kind,
    StrategySpec,
    TieRule,
    coin_keeper_tally,
    minimal_overpay_payments,
    preset,
    tie_break,
    transact,
)
from coinpurse.wallet import StateSpace, WalletConstraints, enumerate_states, total_value

__version__ = "0.1.0"
