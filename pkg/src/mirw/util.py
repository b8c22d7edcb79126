import math
import queue
import traceback
from threading import Thread
from os.path import realpath, expanduser

from mirw import log

LOGGER = log.get_logger()

DEFAULT_QUEUE_SIZE = 10_000


def resolve_path(fn_path):
    """Helper function to resolve relative and linked paths that might
    give other packages problems.
    """
    if fn_path is None:
        return None
    return realpath(expanduser(fn_path))


def round_half_up(value):
    """Round to the nearest integer with ties going up (4.5 -> 5), unlike the
    builtin banker's rounding.
    """
    return int(math.floor(value + 0.5))


def iter_chunks(num_items, chunk_size):
    """Yield (start, end) bounds covering range(num_items) in fixed order."""
    for start in range(0, num_items, chunk_size):
        yield start, min(start + chunk_size, num_items)


###################
# Multiprocessing #
###################


def _put_item(item, out_q):
    """Put item into queue with timeout to handle KeyboardInterrupt"""
    while True:
        try:
            return out_q.put(item, timeout=0.1)
        except queue.Full:
            continue


def _get_item(in_q):
    """Get item from queue with timeout to handle KeyboardInterrupt"""
    while True:
        try:
            return in_q.get(timeout=0.1)
        except queue.Empty:
            continue


def _queue_iter(in_q, num_proc=1):
    comp_proc = 0
    while comp_proc < num_proc:
        item = _get_item(in_q)
        if item is StopIteration:
            comp_proc += 1
        else:
            yield item


def _fill_q(iterator, in_q, num_recievers):
    try:
        for item in iterator:
            _put_item(item, in_q)
    except KeyboardInterrupt:
        pass
    for _ in range(num_recievers):
        _put_item(StopIteration, in_q)


def _mt_func(func, in_q, out_q, name, *args, **kwargs):
    LOGGER.debug(f"Starting {name} worker")
    try:
        for idx, val in _queue_iter(in_q):
            try:
                _put_item((idx, func(val, *args, **kwargs), None), out_q)
            except Exception as e:
                LOGGER.debug(
                    f"UNEXPECTED_ERROR in {name} worker: '{e}'.\n"
                    f"Full traceback: {traceback.format_exc()}"
                )
                # hand the error to the consumer instead of dropping the item
                _put_item((idx, None, e), out_q)
    except KeyboardInterrupt:
        LOGGER.debug(f"stopping {name} due to user interrupt")
    LOGGER.debug(f"Completed {name} worker")
    _put_item(StopIteration, out_q)


class MultitaskMap:
    """Map a function over an iterator of (index, item) pairs using worker
    threads.

    Elements of the iterator are passed as the first argument to func
    followed by args and kwargs provided. Iterating over the object yields
    (index, result, error) 3-tuples in completion order; error is None on
    success and the raised exception otherwise.

    MultitaskMap supports KeyboardInterrupt without flooding the output with
    stack traces from each killed task to exit gracefully and avoid stalling.
    """

    def __init__(
        self,
        func,
        iterator,
        num_workers=1,
        q_maxsize=DEFAULT_QUEUE_SIZE,
        args=(),
        kwargs=None,
        name="MultitaskMap",
    ):
        self.name = name
        self.num_workers = num_workers
        self.out_q = queue.Queue(q_maxsize)
        in_q = queue.Queue(q_maxsize)
        kwargs = {} if kwargs is None else kwargs

        Thread(
            target=_fill_q,
            args=(iterator, in_q, self.num_workers),
            name=f"{self.name}_filler",
            daemon=True,
        ).start()
        args = [func, in_q, self.out_q, self.name] + list(args)
        for idx in range(self.num_workers):
            Thread(
                target=_mt_func,
                args=args,
                kwargs=kwargs,
                name=f"{self.name}_{idx}",
                daemon=True,
            ).start()

    def __iter__(self):
        try:
            yield from _queue_iter(self.out_q, self.num_workers)
        except KeyboardInterrupt:
            LOGGER.debug(f"MultitaskMap {self.name} interrupted")
            pass


def ordered_map(
    func, items, num_workers=1, args=(), kwargs=None, name="ordered_map"
):
    """Apply func to every item and return the results in input order.

    With more than one worker the items are processed by a MultitaskMap. The
    first worker exception is re-raised here. Results do not depend on the
    number of workers.
    """
    items = list(items)
    kwargs = {} if kwargs is None else kwargs
    if num_workers is None or num_workers <= 1 or len(items) <= 1:
        return [func(item, *args, **kwargs) for item in items]
    results = [None] * len(items)
    for idx, result, err in MultitaskMap(
        func,
        enumerate(items),
        num_workers=min(num_workers, len(items)),
        args=args,
        kwargs=kwargs,
        name=name,
    ):
        if err is not None:
            raise err
        results[idx] = result
    return results


if __name__ == "__main__":
    RuntimeError("This is a module.")
