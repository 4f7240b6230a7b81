"""
Decoder Factory
===============
Factory for creating decoder strategy instances.
Enables runtime selection of the decoding algorithm.
"""

from dataclasses import replace
from typing import Optional, Type

from modules.code.spec import CodeSpec
from modules.decoder.strategies.base import DecoderConfig, DecoderStrategy
from modules.decoder.strategies.scl import SCDecoder, SCLDecoder
from modules.decoder.strategies.split_tree import SplitTreeDecoder
from modules.errors import SimulationConfigError


class DecoderFactory:
    """
    Factory for creating decoder instances.

    Usage:
        # Create a list decoder with defaults
        decoder = DecoderFactory.create("scl", code)

        # Create with keyword overrides
        decoder = DecoderFactory.create("s-nbscl", code, list_size=4, skim=16)

        # List available decoders
        kinds = DecoderFactory.available_decoders()
    """

    # Registry of available strategies
    _strategies: dict[str, Type[DecoderStrategy]] = {
        "sc": SCDecoder,
        "scl": SCLDecoder,
        "s-nbscl": SplitTreeDecoder,
    }

    @classmethod
    def create(
        cls,
        kind: str,
        code: CodeSpec,
        config: Optional[DecoderConfig] = None,
        **config_kwargs
    ) -> DecoderStrategy:
        """
        Create a decoder instance.

        Args:
            kind: Decoder identifier ('sc', 'scl', 's-nbscl')
            code: Code to decode
            config: Optional configuration object
            **config_kwargs: Configuration overrides

        Returns:
            DecoderStrategy instance

        Raises:
            SimulationConfigError: If kind is not registered
        """
        kind = kind.lower()
        if kind not in cls._strategies:
            available = ", ".join(cls.available_decoders())
            raise SimulationConfigError(
                f"Unknown decoder: '{kind}'",
                f"available decoders: {available}"
            )
        config = replace(config or DecoderConfig(), kind=kind, **config_kwargs)
        return cls._strategies[kind](code, config)

    @classmethod
    def register(cls, name: str, strategy_class: Type[DecoderStrategy]) -> None:
        """
        Register a new decoder strategy.

        Args:
            name: Decoder identifier
            strategy_class: Class implementing DecoderStrategy
        """
        cls._strategies[name.lower()] = strategy_class

    @classmethod
    def available_decoders(cls) -> list[str]:
        return list(cls._strategies.keys())


def create_decoder(kind: str, code: CodeSpec, **config_kwargs) -> DecoderStrategy:
    """
    Convenience function to create a decoder.

    Example:
        decoder = create_decoder("scl", code, list_size=8)
    """
    return DecoderFactory.create(kind, code, **config_kwargs)
