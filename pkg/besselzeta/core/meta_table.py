import dataclasses
import os
from typing import Any, Dict, List, Set

import yaml


@dataclasses.dataclass
class FamilyMeta:
    """DC describing one coefficient family.

    Args:
        name (str): Short name of the family (c, d, a, alpha, beta).
        first_index (int): Index of the first entry.
        description (str, optional): Description of the family, defaults to ''.
        exact (bool, optional): Whether exact mode yields rationals, defaults to True.
        depends_on (List[str], optional): Families whose tables are needed to extend this one.

    Attributes:
        name (str): Short name of the family (c, d, a, alpha, beta).
        first_index (int): Index of the first entry.
        description (str): Description of the family.
        exact (bool): Whether exact mode yields rationals.
        depends_on (List[str]): Families whose tables are needed to extend this one.
    """

    name: str
    first_index: int
    description: str = ""
    exact: bool = True
    depends_on: List[str] = dataclasses.field(default_factory=list)


@dataclasses.dataclass
class FamilyMetaTable:
    """DC for the whole set of coefficient families.

    Args:
        name (str): Name of the table.
        version (str): Version of the table.
        family_mapping (Dict[str, FamilyMeta]): Mapping of family name to definition.
        description (str, optional): Description of the table, defaults to ''.

    Attributes:
        name (str): Name of the table.
        version (str): Version of the table.
        family_mapping (Dict[str, FamilyMeta]): Mapping of family name to definition.
        description (str): Description of the table.
    """

    name: str
    version: str
    family_mapping: Dict[str, FamilyMeta]
    description: str = ""

    def __contains__(self, family_name: str) -> bool:
        return family_name in self.family_mapping

    def __getitem__(self, family_name: str) -> FamilyMeta:
        if family_name not in self.family_mapping:
            raise KeyError(f"{family_name} not a registered coefficient family.")

        return self.family_mapping[family_name]


@dataclasses.dataclass
class OutputFormat:
    """DC for a rendered output.

    Args:
        name (str): Name of the output.
        version (str): Version of the output.
        template_file_path (str): Path in the template directory to the template file.
        description (str, optional): Description of the output, defaults to ''.
        file_extension (str, optional): Extension used when written to disk, defaults to '.txt'.
        template_inputs (Set[str], optional): Inputs the template reads, defaults to empty set.

    Attributes:
        name (str): Name of the output.
        version (str): Version of the output.
        template_file_path (str): Path in the template directory to the template file.
        description (str): Description of the output.
        file_extension (str): Extension used when written to disk.
        template_inputs (Set[str]): Inputs the template reads.
    """

    name: str
    version: str
    template_file_path: str
    description: str = ""
    file_extension: str = ".txt"
    template_inputs: Set[str] = dataclasses.field(default_factory=set)


@dataclasses.dataclass
class FormatMetaTable:
    """DC for the set of output templates.

    Args:
        name (str): Name of the table.
        version (str): Version of the table.
        template_mapping (Dict[str, OutputFormat]): Mapping of output name to definition.
        description (str, optional): Description of the table, defaults to ''.

    Attributes:
        name (str): Name of the table.
        version (str): Version of the table.
        template_mapping (Dict[str, OutputFormat]): Mapping of output name to definition.
        description (str): Description of the table.
    """

    name: str
    version: str
    template_mapping: Dict[str, OutputFormat]
    description: str = ""

    def __contains__(self, format_name: str) -> bool:
        return format_name in self.template_mapping

    def __getitem__(self, format_name: str) -> OutputFormat:
        if format_name not in self.template_mapping:
            raise KeyError(f"{format_name} not a registered output format.")

        return self.template_mapping[format_name]


def load_family_table(meta_path: str) -> FamilyMetaTable:
    """Load a family meta table from YAML.

    Args:
        meta_path (str): Path to the YAML file.

    Returns:
        FamilyMetaTable: Table with every family parsed into a FamilyMeta.
    """
    table_yaml_obj = _read_yaml(meta_path)
    meta_table = FamilyMetaTable(**table_yaml_obj)
    # the dataclass constructor leaves nested entries as dicts
    meta_table.family_mapping = {
        family_name: FamilyMeta(**family_yaml_def)  # type: ignore
        for family_name, family_yaml_def in meta_table.family_mapping.items()
    }
    return meta_table


def load_format_table(meta_path: str) -> FormatMetaTable:
    """Load an output format meta table from YAML and verify its template files exist.

    Args:
        meta_path (str): Path to the YAML file, template paths are relative to its directory.

    Raises:
        FileNotFoundError: Raises if a referenced template file is missing.

    Returns:
        FormatMetaTable: Table with every output parsed into an OutputFormat.
    """
    table_yaml_obj = _read_yaml(meta_path)
    meta_table = FormatMetaTable(**table_yaml_obj)
    format_obj_defs = {}
    for format_name, format_yaml_def in meta_table.template_mapping.items():
        format_obj = OutputFormat(**format_yaml_def)  # type: ignore
        format_obj.template_inputs = set(format_yaml_def.get("template_inputs", []))  # type: ignore
        template_path = os.path.join(os.path.dirname(meta_path), format_obj.template_file_path)
        if not os.path.exists(template_path):
            raise FileNotFoundError(f"Template {template_path} for output {format_name} does not exist.")
        format_obj_defs[format_name] = format_obj
    meta_table.template_mapping = format_obj_defs
    return meta_table


def _read_yaml(meta_path: str) -> Dict[str, Any]:
    with open(meta_path, "r") as open_meta_buffer:
        return yaml.safe_load(open_meta_buffer)
