import json


def load_result(result):
    """
    Load the Result dictionary from a tool response.
    """
    # The tool returns a JSON string, so we parse it
    return json.loads(result.content[0].text)
