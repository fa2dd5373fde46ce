from enum import Enum, unique


@unique
class RiskAttitude(str, Enum):
    AVERSE = "AVERSE"
    NEUTRAL = "NEUTRAL"
    SEEKING = "SEEKING"

    @classmethod
    def of(cls, r: float) -> "RiskAttitude":
        if r > 0:
            return cls.AVERSE
        if r < 0:
            return cls.SEEKING

        return cls.NEUTRAL
