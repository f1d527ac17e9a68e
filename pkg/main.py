"""
Command-line interface for passive automata learning.

Usage:
    python main.py learn --input traces.jsonl --algorithm rpni --output model.json --dot model.dot
    python main.py learn --input traces.jsonl --algorithm ioalergia --transition-behavior stochastic
    python main.py generate --input model.json --count 200 --min-length 10 --max-length 20 --seed 1
    python main.py generate --input model.json --exhaustive --max-length 8 --output traces.jsonl
    python main.py visualize --input model.json --dot model.dot

Exit codes: 0 ok, 1 data error, 2 usage error.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional

from src.exceptions import ConfigurationError, StateMergingError
from src.extraction.converter import tree_state_to_model
from src.extraction.dot_export import StyleOptions, to_dot
from src.extraction.serialization import load_model, model_to_json
from src.generation.trace_sampler import TraceSampler, trace_kind_for
from src.ingestion.trace_formats import FORMAT_NAMES, format_traces, parse_traces
from src.learning.instrumentation import EventLog, InstrumentationChain, LoggingInstrumentation
from src.learning.state_merging import GeneralizedStateMerging
from src.scoring.registry import algorithm_names, build_engine_config
from src.utils.config import get_config, get_config_value, load_config
from src.utils.file_io import read_text, save_jsonl, write_text
from src.utils.logger import setup_logger
from src.utils.report import RunReport

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the learn, generate and visualize commands."""
    parser = argparse.ArgumentParser(
        description="Passive automata learning with generalized red-blue state merging"
    )
    parser.add_argument('--config', type=str, help='Path to a config.yaml (defaults to the project config)')
    parser.add_argument('--verbose', action='store_true', help='Verbose logging')
    commands = parser.add_subparsers(dest='command', required=True)

    learn = commands.add_parser('learn', help='Learn a model from a trace file')
    learn.add_argument('--input', '-i', required=True, help='Trace file')
    learn.add_argument('--output', '-o', help='Model JSON file (stdout if neither --output nor --dot)')
    learn.add_argument('--dot', help='DOT file of the learned model')
    learn.add_argument('--format', choices=['auto', *FORMAT_NAMES], default='auto', help='Trace format')
    learn.add_argument('--events', help='Write the instrumentation event log as JSON lines')
    learn.add_argument('--report', help='Write the run report as JSON')
    learn.add_argument('--algorithm', '-a', choices=algorithm_names(), help='Learning algorithm')
    learn.add_argument('--output-behavior', choices=['moore', 'mealy'])
    learn.add_argument('--transition-behavior', choices=['deterministic', 'nondeterministic', 'stochastic'])
    learn.add_argument('--epsilon', type=float, help='Hoeffding parameter of the IOAlergia variants')
    learn.add_argument('--error-rate', type=float, help='Per-step error rate for noisy learning')
    learn.add_argument('--threshold', type=float, help='Significance threshold for noisy learning')
    learn.add_argument('--min-blue', action='store_true', default=None, help='Only consider the minimal blue state')
    learn.add_argument('--depth-first', action='store_true', default=None, help='Traverse futures depth first')
    learn.add_argument('--compat-on-pta', action='store_true', default=None,
                       help='Evaluate compatibility on the PTA (needs --compat-on-futures)')
    learn.add_argument('--compat-on-futures', action='store_true', default=None,
                       help='Evaluate compatibility on shared futures')
    learn.add_argument('--check-structure', action='store_true', default=None,
                       help='Validate determinism / Moore property after every merge')
    learn.add_argument('--no-convert', action='store_true', help='Export the internal frequency automaton')
    learn.add_argument('--seed', type=int, help='Random seed (learning itself is deterministic)')

    generate = commands.add_parser('generate', help='Generate traces from a model JSON file')
    generate.add_argument('--input', '-i', required=True, help='Reference model JSON')
    generate.add_argument('--output', '-o', help='Trace file (stdout if omitted)')
    generate.add_argument('--format', choices=['auto', *FORMAT_NAMES], default='auto',
                          help='Expected trace format (must match the model family)')
    generate.add_argument('--dot', help='DOT file of the reference model')
    generate.add_argument('--events', help='Write a generation summary event as JSON lines')
    generate.add_argument('--seed', type=int, help='Random seed')
    generate.add_argument('--count', type=int, help='Number of traces')
    generate.add_argument('--min-length', type=int, help='Minimal trace length')
    generate.add_argument('--max-length', type=int, help='Maximal trace length')
    generate.add_argument('--noise-rate', type=float, help='Per-step output flip probability')
    generate.add_argument('--exhaustive', action='store_true',
                          help='All input words up to --max-length (deterministic models)')

    visualize = commands.add_parser('visualize', help='Export a model JSON file as DOT')
    visualize.add_argument('--input', '-i', required=True, help='Model JSON')
    visualize.add_argument('--dot', '--output', '-o', dest='dot', help='DOT file (stdout if omitted)')

    return parser


def _emit(text: str, path: Optional[str], logger) -> None:
    if path:
        write_text(text, path)
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def cmd_learn(args: argparse.Namespace, config: Dict[str, Any], logger) -> int:
    """Learn a model from a trace file."""
    engine_config = build_engine_config(
        args.algorithm,
        config,
        output_behavior=args.output_behavior,
        transition_behavior=args.transition_behavior,
        epsilon=args.epsilon,
        error_rate=args.error_rate,
        threshold=args.threshold,
        consider_only_min_blue=args.min_blue,
        depth_first=args.depth_first,
        eval_compat_on_pta=args.compat_on_pta,
        eval_compat_on_futures=args.compat_on_futures,
        check_structure=args.check_structure,
    )
    data = parse_traces(read_text(args.input), args.format)
    logger.info(f"Loaded {len(data)} traces ({data.kind.value}) from {args.input}")

    if args.seed is not None:
        logger.debug(f"Seed {args.seed} ignored, learning is deterministic")
    event_log = EventLog() if args.events or args.report else None
    handlers = [event_log, LoggingInstrumentation() if args.verbose else None]
    learner = GeneralizedStateMerging(engine_config, config, InstrumentationChain(*handlers))
    result = learner.run(data, convert=not args.no_convert)
    model = tree_state_to_model(result) if args.no_convert else result

    if args.output or not args.dot:
        _emit(model_to_json(model), args.output, logger)
    if args.dot:
        _emit(to_dot(model, StyleOptions.from_config(config)), args.dot, logger)
    if args.events:
        event_log.save(args.events)
        logger.info(f"Wrote {len(event_log.events)} events to {args.events}")

    stats = learner.stats
    report = RunReport(
        algorithm=args.algorithm or get_config_value(config, "learning.algorithm", "rpni"),
        family=model.family.value,
        traces=len(data),
        total_symbols=data.total_symbols,
        pta_states=stats.pta_states,
        final_states=stats.final_states,
        merges=stats.merges,
        promotions=stats.promotions,
        candidates=stats.candidates,
        wall_time=stats.wall_time,
        events=event_log.events if event_log is not None else None,
    )
    print(report.summary(), file=sys.stderr)
    if args.report:
        report.save(args.report)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: Dict[str, Any], logger) -> int:
    """Generate a trace file from a model."""
    model = load_model(args.input)
    kind = trace_kind_for(model)
    if args.format != 'auto' and FORMAT_NAMES[args.format] is not kind:
        raise ConfigurationError(
            f"A {model.family.value} model generates {kind.value} traces, not {args.format}"
        )
    sampler = TraceSampler(model, seed=args.seed, noise_rate=args.noise_rate, config=config)
    if args.exhaustive:
        max_length = args.max_length if args.max_length is not None else int(
            get_config_value(config, "generation.max_length", 8))
        traces = sampler.enumerate(max_length)
    else:
        traces = sampler.sample(args.count, args.min_length, args.max_length)
    logger.info(f"Generated {len(traces)} traces ({traces.kind.value})")
    _emit(format_traces(traces), args.output, logger)
    if args.dot:
        _emit(to_dot(model, StyleOptions.from_config(config)), args.dot, logger)
    if args.events:
        save_jsonl([{
            "event": "generated",
            "kind": traces.kind.value,
            "traces": len(traces),
            "total_symbols": traces.total_symbols,
            "seed": args.seed,
            "flips": sampler.flips,
        }], args.events)
        logger.info(f"Wrote generation summary to {args.events}")
    return EXIT_OK


def cmd_visualize(args: argparse.Namespace, config: Dict[str, Any], logger) -> int:
    """Export a model as DOT."""
    model = load_model(args.input)
    _emit(to_dot(model, StyleOptions.from_config(config)), args.dot, logger)
    return EXIT_OK


COMMANDS = {
    'learn': cmd_learn,
    'generate': cmd_generate,
    'visualize': cmd_visualize,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR

    config = load_config(args.config) if args.config else get_config()
    log_level = 'DEBUG' if args.verbose else get_config_value(config, 'logging.level', 'INFO')
    logger = setup_logger(level=log_level)

    try:
        return COMMANDS[args.command](args, config, logger)
    except ConfigurationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE_ERROR
    except (StateMergingError, FileNotFoundError) as e:
        logger.error(str(e))
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
