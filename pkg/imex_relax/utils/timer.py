import time


class Timer:
    """
    Accumulating wall-clock timer. Each `with timer:` block is one lap, e.g.

    timer = Timer()
    for _ in range(steps):
        with timer:
            state = stepper.step(state, dt)
    """

    def __init__(self):
        self.start_time = None
        self.elapsed_time = 0.0
        self.laps = 0

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.stop()

    def start(self):
        self.start_time = time.perf_counter()

    def stop(self):
        lap = time.perf_counter() - self.start_time
        self.elapsed_time += lap
        self.laps += 1
        return lap

    @property
    def mean(self) -> float:
        return self.elapsed_time / self.laps if self.laps else 0.0
