import argparse
import asyncio
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

# --- Application Imports ---
try:
    from hecke_series import config
    from hecke_series.services import codec, verification
except ImportError:
    logging.exception("ImportError: Failed to import hecke_series modules.")
    logging.critical("Ensure you have run 'pip install -e .' from the project root.")
    sys.exit(1)

# --- Logging Configuration ---
logging.basicConfig(level=logging.INFO, format=config.LOG_FORMAT)
log = logging.getLogger(__name__)


def _timed_run(suite: str, trials: int, seed: int):
    start = time.time()
    run = verification.run_suite(suite, trials, seed)
    return run.to_dict(), time.time() - start


# --- Main Processing Logic ---
async def main(loop, trials: int, seed: int, workers: int) -> bool:
    """Runs every verification suite in its own worker process."""
    log.info("--- Starting verification suites ---")
    log.info(config.describe_config())
    start_time = time.time()

    with ProcessPoolExecutor(max_workers=workers) as executor:
        tasks = [
            loop.run_in_executor(executor, _timed_run, suite, trials, seed)
            for suite in verification.SUITES
        ]
        results = await asyncio.gather(*tasks, return_exceptions=True)

    passed = True
    documents = []
    for suite, result in zip(verification.SUITES, results):
        if isinstance(result, Exception):
            log.error(f"Suite {suite} crashed: {result}")
            passed = False
            continue
        document, elapsed = result
        documents.append(document)
        status = "passed" if document["passed"] else f"{len(document['failures'])} failures"
        log.info(f"Suite {suite}: {status} in {elapsed:.2f}s")
        passed = passed and document["passed"]

    print(codec.dumps({"seed": seed, "trials": trials, "passed": passed, "runs": documents}))
    log.info(f"--- Verification finished in {time.time() - start_time:.2f}s ---")
    return passed


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run all verification suites in parallel.")
    parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--workers", type=int, default=max(config.VERIFY_WORKERS, 2))
    args = parser.parse_args()

    loop = asyncio.new_event_loop()
    try:
        ok = loop.run_until_complete(main(loop, args.trials, args.seed, args.workers))
    finally:
        loop.close()
    sys.exit(0 if ok else 1)
