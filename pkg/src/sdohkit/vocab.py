"""Built-in vocabulary: property names, time flags and the nine top-level classes."""

from .terms import Iri

SDOHO = ""  # default namespace label
TEO = "teo"
PACO = "paco"
RDFS = "rdfs"
SKOS = "skos"

DEFAULT_PREFIXES = {
    SDOHO: "http://purl.org/sdoho#",
    TEO: "http://informatics.mayo.edu/TEO.owl#",
    PACO: "http://purl.org/paco#",
    RDFS: "http://www.w3.org/2000/01/rdf-schema#",
    SKOS: "http://www.w3.org/2004/02/skos/core#",
}

# factor-to-factor and factor-to-measure links
relates = Iri(SDOHO, "relates")
has_measure = Iri(SDOHO, "has_measure")
has_time_flag = Iri(SDOHO, "has_time_flag")

# person-to-factor links
has_race = Iri(SDOHO, "has_race")
has_gender = Iri(SDOHO, "has_gender")
has_sexual_orientation = Iri(SDOHO, "has_sexual_orientation")
has_employment_status = Iri(SDOHO, "has_employment_status")
has_occupation = Iri(SDOHO, "has_occupation")
has_education_level = Iri(SDOHO, "has_education_level")
has_insurance = Iri(SDOHO, "has_insurance")
has_marital_status = Iri(SDOHO, "has_marital_status")
has_living_status = Iri(SDOHO, "has_living_status")
has_adverse_childhood_experience = Iri(SDOHO, "has_adverse_childhood_experience")
has_condom_use = Iri(SDOHO, "has_condom_use")
has_diagnosis = Iri(SDOHO, "has_diagnosis")
has_incarceration_status = Iri(SDOHO, "has_incarceration_status")
has_loan = Iri(SDOHO, "has_loan")
has_substance_use_element = Iri(SDOHO, "has_substance_use_element")
has_sexual_behavior_element = Iri(SDOHO, "has_sexual_behavior_element")
has_behavior_change = Iri(SDOHO, "has_behavior_change")

# data properties
has_number = Iri(SDOHO, "has_number")
has_number_of_sex_partner = Iri(SDOHO, "has_number_of_sex_partner")
has_time_description = Iri(SDOHO, "has_time_description")
teo_hasAgeValue = Iri(TEO, "hasAgeValue")
paco_hasTotalAmountMin = Iri(PACO, "hasTotalAmountMin")

# imported object property linking a behaviour to its observation window
paco_hasObservationPeriod = Iri(PACO, "hasObservationPeriod")

# annotation properties
rdfs_label = Iri(RDFS, "label")
skos_altLabel = Iri(SKOS, "altLabel")
skos_definition = Iri(SKOS, "definition")

# time-flag individuals
current = Iri(SDOHO, "current")
past = Iri(SDOHO, "past")
TIME_FLAGS = {"current": current, "past": past}

# classes the encoder relies on
Person = Iri(SDOHO, "Person")
Behavior_Change = Iri(SDOHO, "Behavior_Change")
Sexual_Behavior_Element = Iri(SDOHO, "Sexual_Behavior_Element")
Measure_and_Index_and_Score = Iri(SDOHO, "Measure_and_Index_and_Score")

TOP_LEVEL_CLASSES = tuple(
    Iri(SDOHO, name)
    for name in (
        "Element_Relevant_to_Behavior_and_Lifestyle",
        "Demographic",
        "Element_Relevant_to_Education",
        "Element_Relevant_to_Social_and_Community_Context",
        "Element_Relevant_to_Health_Care",
        "Element_Relevant_to_Economic_Stability",
        "Element_Relevant_to_Neighborhood",
        "Element_Relevant_to_Food",
        "Measure_and_Index_and_Score",
    )
)
assert len(TOP_LEVEL_CLASSES) == 9

OBJECT_PROPERTIES = (
    relates, has_measure, has_time_flag, has_race, has_gender,
    has_sexual_orientation, has_employment_status, has_occupation,
    has_education_level, has_insurance, has_marital_status, has_living_status,
    has_adverse_childhood_experience, has_condom_use, has_diagnosis,
    has_incarceration_status, has_loan, has_substance_use_element,
    has_sexual_behavior_element, has_behavior_change, paco_hasObservationPeriod,
)
DATA_PROPERTIES = (
    has_number, has_number_of_sex_partner, has_time_description,
    teo_hasAgeValue, paco_hasTotalAmountMin,
)
ANNOTATION_PROPERTIES = (rdfs_label, skos_altLabel, skos_definition)
