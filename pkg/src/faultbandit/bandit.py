"""Arm-state bookkeeping and selection policies.

Arms are fault-prediction models whose per-module predictions are fixed
before testing starts.  After each tested module an arm receives a reward
of +1 (its prediction matched the test outcome) or -1 (it did not).  Two
feedback modes are supported: classic partial feedback, where only the
played arm is rewarded, and full information, where every arm is rewarded
at every step because all predictions for the tested module are known
up front.

Selection functions are pure: they never mutate arm state and draw
randomness only from the random source passed in.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

FP = "FP"
NFP = "NFP"

FULL_INFORMATION = "full"
PARTIAL_FEEDBACK = "partial"

EPSILON_GREEDY = "epsilon_greedy"
UCB = "ucb"
THOMPSON = "thompson"
AB_TEST = "ab_test"


@dataclass(slots=True)
class ArmState:
    """Running reward statistics for one arm.

    ``ts_successes`` / ``ts_failures`` count +1 / -1 rewards and feed the
    Beta(successes+1, failures+1) posterior used by Thompson sampling, so
    ``ts_successes + ts_failures == pulls`` and
    ``ts_successes - ts_failures == cumulative_reward`` at all times.
    """

    pulls: int = 0
    cumulative_reward: int = 0
    ts_successes: int = 0
    ts_failures: int = 0

    def average_reward(self) -> float:
        """Mean reward in [-1, 1]; 0 for an arm that was never rewarded."""
        if self.pulls == 0:
            return 0.0
        return self.cumulative_reward / self.pulls

    def record(self, reward: int) -> None:
        if reward == 1:
            self.ts_successes += 1
        elif reward == -1:
            self.ts_failures += 1
        else:
            raise ValueError(f"reward must be +1 or -1, got {reward!r}")
        self.pulls += 1
        self.cumulative_reward += reward


def average_reward(arm: ArmState) -> float:
    return arm.average_reward()


def reward_of(prediction: str, actual_faulty: bool) -> int:
    """+1 when the prediction matches the test outcome, -1 otherwise."""
    if prediction not in (FP, NFP):
        raise ValueError(f"prediction must be {FP!r} or {NFP!r}, got {prediction!r}")
    return 1 if (prediction == FP) == actual_faulty else -1


def update_partial(arms: list[ArmState], chosen: int, reward: int) -> None:
    """Reward only the played arm (classic bandit feedback)."""
    if not 0 <= chosen < len(arms):
        raise IndexError(f"arm index {chosen} out of range for {len(arms)} arms")
    arms[chosen].record(reward)


def update_full(arms: list[ArmState], rewards: list[int]) -> None:
    """Reward every arm at once (full-information feedback)."""
    if len(rewards) != len(arms):
        raise ValueError(f"expected {len(arms)} rewards, got {len(rewards)}")
    for arm, reward in zip(arms, rewards):
        arm.record(reward)


def _argmax_average(arms: list[ArmState]) -> int:
    # first maximal element: ties break to the lowest index
    best = 0
    best_avg = arms[0].cumulative_reward / arms[0].pulls if arms[0].pulls else 0.0
    for i in range(1, len(arms)):
        arm = arms[i]
        avg = arm.cumulative_reward / arm.pulls if arm.pulls else 0.0
        if avg > best_avg:
            best = i
            best_avg = avg
    return best


def select_epsilon_greedy(arms: list[ArmState], epsilon: float, rng: random.Random) -> int:
    """Uniform random arm with probability epsilon, else argmax of averages.

    Ties break to the lowest index; untried arms count as average 0.
    """
    if not arms:
        raise ValueError("no arms to select from")
    if rng.random() < epsilon:
        return rng.randrange(len(arms))
    return _argmax_average(arms)


def select_ucb(arms: list[ArmState], t: int) -> int:
    """UCB1: argmax of average + sqrt(2 ln t / pulls).

    Arms that were never rewarded have an infinite bound and are picked
    first (lowest index among them).  Under full information every arm
    has equal pulls, the bonus cancels, and UCB coincides with the
    epsilon=0 greedy choice.
    """
    if not arms:
        raise ValueError("no arms to select from")
    if t < 1:
        raise ValueError(f"step count must be >= 1, got {t}")
    for i, arm in enumerate(arms):
        if arm.pulls == 0:
            return i
    log2t = 2.0 * math.log(t)
    best = 0
    best_bound = arms[0].cumulative_reward / arms[0].pulls + math.sqrt(log2t / arms[0].pulls)
    for i in range(1, len(arms)):
        arm = arms[i]
        bound = arm.cumulative_reward / arm.pulls + math.sqrt(log2t / arm.pulls)
        if bound > best_bound:
            best = i
            best_bound = bound
    return best


def select_thompson(arms: list[ArmState], rng: random.Random) -> int:
    """Draw from each arm's Beta(successes+1, failures+1) posterior, argmax."""
    if not arms:
        raise ValueError("no arms to select from")
    betavariate = rng.betavariate
    best = 0
    best_draw = betavariate(arms[0].ts_successes + 1, arms[0].ts_failures + 1)
    for i in range(1, len(arms)):
        arm = arms[i]
        draw = betavariate(arm.ts_successes + 1, arm.ts_failures + 1)
        if draw > best_draw:
            best = i
            best_draw = draw
    return best


def select_ab_test(arms: list[ArmState], t: int, exploration_steps: int) -> int:
    """Round-robin through the arms for t <= exploration_steps, then the
    argmax of the averages.

    The post-exploration argmax is computed from the arm states passed in;
    a run-long commitment (the argmax frozen at the end of exploration) is
    the job of :class:`PolicyState`, which calls this once at the first
    post-exploration step and replays the answer afterwards.
    """
    if not arms:
        raise ValueError("no arms to select from")
    if t < 1:
        raise ValueError(f"step count must be >= 1, got {t}")
    if t <= exploration_steps:
        return (t - 1) % len(arms)
    return _argmax_average(arms)


@dataclass(frozen=True)
class PolicyConfig:
    """Selection rule plus feedback mode.

    ``kind`` is one of EPSILON_GREEDY, UCB, THOMPSON, AB_TEST; ``epsilon``
    only applies to epsilon-greedy and ``exploration_steps`` only to the
    A/B-test policy.
    """

    kind: str
    epsilon: float = 0.0
    exploration_steps: int = 0
    feedback: str = FULL_INFORMATION

    def __post_init__(self) -> None:
        if self.kind not in (EPSILON_GREEDY, UCB, THOMPSON, AB_TEST):
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.feedback not in (FULL_INFORMATION, PARTIAL_FEEDBACK):
            raise ValueError(f"unknown feedback mode {self.feedback!r}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")
        if self.kind == AB_TEST and self.exploration_steps < 1:
            raise ValueError("exploration_steps must be a positive integer")

    @property
    def label(self) -> str:
        if self.kind == EPSILON_GREEDY:
            return f"epsilon={self.epsilon:g}"
        if self.kind == UCB:
            return "UCB"
        if self.kind == THOMPSON:
            return "TS"
        return f"AB({self.exploration_steps})"


def epsilon_greedy(epsilon: float, feedback: str = FULL_INFORMATION) -> PolicyConfig:
    return PolicyConfig(kind=EPSILON_GREEDY, epsilon=epsilon, feedback=feedback)


def ucb(feedback: str = FULL_INFORMATION) -> PolicyConfig:
    return PolicyConfig(kind=UCB, feedback=feedback)


def thompson(feedback: str = FULL_INFORMATION) -> PolicyConfig:
    return PolicyConfig(kind=THOMPSON, feedback=feedback)


def ab_test(exploration_steps: int, feedback: str = FULL_INFORMATION) -> PolicyConfig:
    return PolicyConfig(kind=AB_TEST, exploration_steps=exploration_steps, feedback=feedback)


def parse_policy(spec: str, feedback: str = FULL_INFORMATION) -> PolicyConfig:
    """Parse a policy string: ``epsilon=0.1``, ``ucb``, ``ts``, ``ab=20``."""
    text = spec.strip().lower()
    if text in ("ucb",):
        return ucb(feedback)
    if text in ("ts", "thompson"):
        return thompson(feedback)
    if text.startswith("epsilon=") or text.startswith("eps="):
        value = text.split("=", 1)[1]
        return epsilon_greedy(float(value), feedback)
    if text.startswith("ab="):
        return ab_test(int(text.split("=", 1)[1]), feedback)
    raise ValueError(f"cannot parse policy {spec!r}")


class PolicyState:
    """Per-run selector.

    Stateless policies delegate straight to the selection functions; the
    A/B-test policy additionally remembers the arm it committed to at the
    end of its exploration phase, so the commitment really is frozen even
    though the averages keep moving afterwards.
    """

    def __init__(self, config: PolicyConfig) -> None:
        self.config = config
        self._committed: int | None = None

    def select(self, arms: list[ArmState], t: int, rng: random.Random) -> int:
        config = self.config
        if config.kind == EPSILON_GREEDY:
            return select_epsilon_greedy(arms, config.epsilon, rng)
        if config.kind == UCB:
            return select_ucb(arms, t)
        if config.kind == THOMPSON:
            return select_thompson(arms, rng)
        if config.exploration_steps < len(arms):
            raise ValueError(
                f"A/B exploration_steps={config.exploration_steps} is smaller "
                f"than the number of arms ({len(arms)})"
            )
        if t <= config.exploration_steps:
            return select_ab_test(arms, t, config.exploration_steps)
        if self._committed is None:
            self._committed = select_ab_test(arms, t, config.exploration_steps)
        return self._committed
