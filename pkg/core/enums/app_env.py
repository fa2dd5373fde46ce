from enum import Enum, unique, auto


@unique
class AppEnv(str, Enum):
    DEV = auto()
    PROD = auto()
    TEST = auto()

    @classmethod
    def of(cls, name: str) -> "AppEnv":
        """Resolve an APP_ENV value case-insensitively, falling back to DEV"""
        try:
            return cls[name.strip().upper()]
        except KeyError:
            return cls.DEV
