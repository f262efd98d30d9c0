"""Synthetic backend - routes simlab policies through the gateway."""

from __future__ import annotations

from tgbi.corpus import EecSentence
from tgbi.errors import BackendConfigError, PolicyError
from tgbi.classifier import default_wordlists
from tgbi.simlab import SyntheticPolicy, builtin_policy_path, check_glosses, load_policy, synth_translate
from tgbi.translators.base import BackendDescriptor, BaseTranslator


class SyntheticTranslator(BaseTranslator):
    """
    endpoint_config takes one of:
        policy: inline policy object
        policy_path: path to a policy JSON file
        builtin: "neutral" or "demonstration"
    """

    def __init__(self, descriptor: BackendDescriptor, policy: SyntheticPolicy | None = None) -> None:
        super().__init__(descriptor)
        self.policy = policy or self._policy_from_config()

    def _policy_from_config(self) -> SyntheticPolicy:
        config = self.descriptor.endpoint_config
        try:
            if "policy" in config:
                return SyntheticPolicy.from_dict(config["policy"])
            if "policy_path" in config:
                return load_policy(self.descriptor.resolve_path(config["policy_path"]))
            if "builtin" in config:
                return load_policy(builtin_policy_path(config["builtin"]))
        except PolicyError as e:
            raise BackendConfigError(self.backend_id, str(e)) from e
        raise BackendConfigError(self.backend_id, "Synthetic backends need policy, policy_path or builtin")

    def prepare(self, sentences: list[EecSentence]) -> None:
        try:
            check_glosses(sentences, default_wordlists())
        except PolicyError as e:
            raise BackendConfigError(self.backend_id, str(e)) from e

    async def translate(self, sentence: EecSentence, source: str) -> str:
        return synth_translate(sentence, self.policy)
