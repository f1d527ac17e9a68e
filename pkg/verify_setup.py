import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent))


# Example 2: three Mealy traces, the last step of the second one changed to y/a
EXAMPLE_TRACES = [
    [("x", "a"), ("x", "a"), ("x", "a")],
    [("x", "a"), ("x", "a"), ("y", "a")],
    [("y", "b")],
]


def test_environment():
    print("Testing environment setup...")

    # 1. Third-party stack
    try:
        import numpy
        import scipy.stats
        import tqdm
        import yaml
        print(f"numpy {numpy.__version__}, scipy, tqdm {tqdm.__version__}, pyyaml {yaml.__version__} imported")
    except ImportError as e:
        print(f"ImportError: {e}. Check pip install -r requirements.txt")
        return False

    # 2. Package and configuration
    try:
        from src.automata.tree_state import BehaviorConfig
        from src.learning.state_merging import EngineConfig, GeneralizedStateMerging
        from src.utils.config import load_config
        config = load_config()
        print("config.yaml loaded")
    except Exception as e:
        print(f"Error importing the package: {e}")
        return False

    # 3. A small learning run
    try:
        engine_config = EngineConfig.from_config(config, behavior=BehaviorConfig.of("mealy", "deterministic"),
                                                 show_progress=False)
        model = GeneralizedStateMerging(engine_config, config).run(EXAMPLE_TRACES)
        if len(model) != 2:
            print(f"Error: expected a 2-state Mealy machine, learned {len(model)} states")
            return False
        print(f"Learned a {model.family.value} with {len(model)} states")
    except Exception as e:
        print(f"Error running the learner: {e}")
        return False

    return True


if __name__ == "__main__":
    success = test_environment()
    sys.exit(0 if success else 1)
